//! Terms, formulas, assignments and the three-valued evaluation semantics,
//! including extended root constraints.
//!
//! Formulas are hash-consed into a term DAG so relevant terms have stable
//! identities; plugins key their bookkeeping by term id.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rat, Sort, Var, VarOrder};
use crate::realalg::{self, AlgebraicNumber, RealPoint, RootsAt};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

/// Relation symbol of a polynomial constraint `f rel 0` or an extended
/// constraint `x rel_r root(f, k, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn eval_sign(self, s: i8) -> bool {
        match self {
            Rel::Lt => s < 0,
            Rel::Le => s <= 0,
            Rel::Eq => s == 0,
            Rel::Ge => s >= 0,
            Rel::Gt => s > 0,
        }
    }

    /// Relation for the mirrored polynomial: `f rel 0` iff `-f rel.flip() 0`.
    pub fn flip(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Eq => Rel::Eq,
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
        }
    }

    pub fn of_sign(s: i8) -> Rel {
        match s.cmp(&0) {
            Ordering::Less => Rel::Lt,
            Ordering::Equal => Rel::Eq,
            Ordering::Greater => Rel::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(pub u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    True,
    False,
    BoolVar(Var),
    /// `poly rel 0`, with `poly` primitive and positively sign-normalized.
    PolyAtom { poly: Polynomial, rel: Rel },
    /// `var rel_r root(poly, k, var)`; `var` is the top variable of `poly`
    /// and `k >= 1` counts real roots in increasing order.
    ExtendedAtom {
        var: Var,
        rel: Rel,
        poly: Polynomial,
        k: u32,
    },
    Not(TermId),
    And(Vec<TermId>),
    Or(Vec<TermId>),
}

/// A literal: an atom (or compound term treated as a Boolean) with polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub atom: TermId,
    pub pos: bool,
}

impl Lit {
    pub fn new(atom: TermId, pos: bool) -> Self {
        Lit { atom, pos }
    }

    pub fn negated(self) -> Self {
        Lit {
            atom: self.atom,
            pos: !self.pos,
        }
    }
}

/// A duplicate-free disjunction of literals in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn empty() -> Self {
        Clause { lits: vec![] }
    }

    pub fn new(lits: Vec<Lit>) -> Self {
        let mut c = Clause::empty();
        for l in lits {
            c.push(l);
        }
        c
    }

    pub fn push(&mut self, l: Lit) {
        if !self.lits.contains(&l) {
            self.lits.push(l);
        }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, l: &Lit) -> bool {
        self.lits.contains(l)
    }

    /// Resolution on `atom`: `(self \ {¬l}) ∪ (reason \ {l})` where `l` is
    /// the literal of `atom` with value `pos` in the trail.
    pub fn resolve(&self, reason: &Clause, atom: TermId, pos: bool) -> Clause {
        let mut out = Clause::empty();
        for l in &self.lits {
            if l.atom == atom && l.pos != pos {
                continue;
            }
            out.push(*l);
        }
        for l in reason.lits() {
            if l.atom == atom && l.pos == pos {
                continue;
            }
            out.push(*l);
        }
        out
    }

    /// Set equality up to literal order.
    pub fn same_lits(&self, other: &Clause) -> bool {
        self.lits.len() == other.lits.len() && self.lits.iter().all(|l| other.contains(l))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Real(AlgebraicNumber),
}

impl Value {
    pub fn rat(q: Rat) -> Value {
        Value::Real(AlgebraicNumber::Rational(q))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<&AlgebraicNumber> {
        match self {
            Value::Real(a) => Some(a),
            _ => None,
        }
    }

    pub fn semantically_eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Real(a), Value::Real(b)) => a.compare(b) == Ordering::Equal,
            _ => false,
        }
    }
}

/// A partial, insertion-ordered, type-consistent variable assignment.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    entries: Vec<(Var, Value)>,
    index: HashMap<Var, usize>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn insert(&mut self, v: Var, value: Value) {
        match self.index.get(&v) {
            Some(i) => self.entries[*i].1 = value,
            None => {
                self.index.insert(v, self.entries.len());
                self.entries.push((v, value));
            }
        }
    }

    pub fn get(&self, v: Var) -> Option<&Value> {
        self.index.get(&v).map(|i| &self.entries[*i].1)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.index.contains_key(&v)
    }

    pub fn remove(&mut self, v: Var) {
        if let Some(i) = self.index.remove(&v) {
            self.entries.remove(i);
            for (w, j) in self.index.iter_mut() {
                if *j > i {
                    *j -= 1;
                }
                let _ = w;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Var, Value)> {
        self.entries.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.entries.iter().map(|(v, _)| *v)
    }

    /// Restriction to a variable set, preserving insertion order.
    pub fn restrict(&self, keep: &HashSet<Var>) -> Assignment {
        let mut out = Assignment::new();
        for (v, val) in &self.entries {
            if keep.contains(v) {
                out.insert(*v, val.clone());
            }
        }
        out
    }

    /// Union of agreeing assignments; `None` when they disagree on a
    /// common variable.
    pub fn union(&self, other: &Assignment) -> Option<Assignment> {
        let mut out = self.clone();
        for (v, val) in &other.entries {
            match out.get(*v) {
                Some(existing) => {
                    if !existing.semantically_eq(val) {
                        return None;
                    }
                }
                None => out.insert(*v, val.clone()),
            }
        }
        Some(out)
    }

    /// Real-valued view for the given variables; errors if any is missing
    /// or Boolean.
    pub fn real_point_for<I: IntoIterator<Item = Var>>(&self, vars: I) -> Result<RealPoint> {
        let mut pt = RealPoint::new();
        for v in vars {
            match self.get(v) {
                Some(Value::Real(a)) => {
                    pt.insert(v, a.clone());
                }
                Some(Value::Bool(_)) => {
                    return Err(Error::Sort(format!(
                        "variable {v:?} is Boolean in an arithmetic context"
                    )))
                }
                None => return Err(Error::IncompleteAssignment(format!("{v:?}"))),
            }
        }
        Ok(pt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthValue {
    True,
    False,
    Undetermined,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn not(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Undetermined => TruthValue::Undetermined,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Undetermined => None,
        }
    }
}

struct CtxInner {
    var_names: Vec<String>,
    var_sorts: Vec<Sort>,
    by_name: HashMap<String, Var>,
    order: Rc<VarOrder>,
    terms: Vec<TermKind>,
    term_ids: HashMap<TermKind, TermId>,
    term_vars: HashMap<TermId, Rc<Vec<Var>>>,
    internal_counter: u32,
}

/// Shared handle to a term context: variable registry, the global variable
/// order, and the hash-consed term table.
#[derive(Clone)]
pub struct Ctx {
    inner: Rc<RefCell<CtxInner>>,
}

impl Default for Ctx {
    fn default() -> Self {
        Self::new()
    }
}

impl Ctx {
    pub fn new() -> Self {
        Ctx {
            inner: Rc::new(RefCell::new(CtxInner {
                var_names: vec![],
                var_sorts: vec![],
                by_name: HashMap::new(),
                order: Rc::new(VarOrder::new()),
                terms: vec![],
                term_ids: HashMap::new(),
                term_vars: HashMap::new(),
                internal_counter: 0,
            })),
        }
    }

    pub fn declare_var(&self, name: &str, sort: Sort) -> Result<Var> {
        let mut inner = self.inner.borrow_mut();
        if inner.by_name.contains_key(name) {
            return Err(Error::Sort(format!("symbol {name} already declared")));
        }
        let v = Var(inner.var_names.len() as u32);
        inner.var_names.push(name.to_string());
        inner.var_sorts.push(sort);
        inner.by_name.insert(name.to_string(), v);
        if sort == Sort::Real {
            let mut order = (*inner.order).clone();
            order.push(v);
            inner.order = Rc::new(order);
        }
        Ok(v)
    }

    /// Fresh Real variable with a generated name (used by unrolling).
    pub fn fresh_real(&self, hint: &str) -> Var {
        let n = {
            let mut inner = self.inner.borrow_mut();
            inner.internal_counter += 1;
            inner.internal_counter
        };
        let name = format!("{hint}!{n}");
        match self.declare_var(&name, Sort::Real) {
            Ok(v) => v,
            Err(_) => self.fresh_real(hint),
        }
    }

    pub fn lookup_var(&self, name: &str) -> Option<Var> {
        self.inner.borrow().by_name.get(name).copied()
    }

    pub fn var_name(&self, v: Var) -> String {
        self.inner.borrow().var_names[v.index()].clone()
    }

    pub fn var_sort(&self, v: Var) -> Sort {
        self.inner.borrow().var_sorts[v.index()]
    }

    pub fn var_count(&self) -> usize {
        self.inner.borrow().var_names.len()
    }

    pub fn order(&self) -> Rc<VarOrder> {
        self.inner.borrow().order.clone()
    }

    /// A copy of this context (same variables and ids) with a different
    /// variable order and an empty term table. Terms must be translated.
    pub fn clone_with_order(&self, order: VarOrder) -> Ctx {
        let inner = self.inner.borrow();
        assert_eq!(order.len(), inner.order.len(), "order must cover all Real vars");
        Ctx {
            inner: Rc::new(RefCell::new(CtxInner {
                var_names: inner.var_names.clone(),
                var_sorts: inner.var_sorts.clone(),
                by_name: inner.by_name.clone(),
                order: Rc::new(order),
                terms: vec![],
                term_ids: HashMap::new(),
                term_vars: HashMap::new(),
                internal_counter: inner.internal_counter,
            })),
        }
    }

    fn intern(&self, kind: TermKind) -> TermId {
        let mut inner = self.inner.borrow_mut();
        if let Some(id) = inner.term_ids.get(&kind) {
            return *id;
        }
        let id = TermId(inner.terms.len() as u32);
        inner.terms.push(kind.clone());
        inner.term_ids.insert(kind, id);
        id
    }

    pub fn term(&self, t: TermId) -> TermKind {
        self.inner.borrow().terms[t.index()].clone()
    }

    pub fn mk_true(&self) -> TermId {
        self.intern(TermKind::True)
    }

    pub fn mk_false(&self) -> TermId {
        self.intern(TermKind::False)
    }

    pub fn mk_bool_var(&self, v: Var) -> Result<TermId> {
        if self.var_sort(v) != Sort::Bool {
            return Err(Error::Sort(format!(
                "{} is not a Boolean variable",
                self.var_name(v)
            )));
        }
        Ok(self.intern(TermKind::BoolVar(v)))
    }

    /// `poly rel 0`, canonicalized: constants decide immediately, contents
    /// are cleared, and the sign is normalized so the recursive leading
    /// coefficient is positive.
    pub fn mk_poly_atom(&self, poly: Polynomial, rel: Rel) -> TermId {
        if let Some(c) = poly.as_constant() {
            use num_traits::{Signed, Zero};
            let s = if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            };
            return if rel.eval_sign(s) {
                self.mk_true()
            } else {
                self.mk_false()
            };
        }
        let (poly, rel) = if poly.leading_sign() < 0 {
            (poly.neg().primitive_int(), rel.flip())
        } else {
            (poly.primitive_int(), rel)
        };
        self.intern(TermKind::PolyAtom { poly, rel })
    }

    /// `var rel_r root(poly, k, var)`.
    pub fn mk_extended(&self, var: Var, rel: Rel, poly: Polynomial, k: u32) -> Result<TermId> {
        if k == 0 {
            return Err(Error::Precondition("root index must be >= 1".into()));
        }
        if poly.top_var() != Some(var) {
            return Err(Error::Precondition(format!(
                "{} is not the top variable of the root polynomial",
                self.var_name(var)
            )));
        }
        let poly = poly.sign_normalized();
        Ok(self.intern(TermKind::ExtendedAtom { var, rel, poly, k }))
    }

    pub fn mk_not(&self, t: TermId) -> TermId {
        match self.term(t) {
            TermKind::True => self.mk_false(),
            TermKind::False => self.mk_true(),
            TermKind::Not(s) => s,
            _ => self.intern(TermKind::Not(t)),
        }
    }

    pub fn mk_and(&self, ts: Vec<TermId>) -> TermId {
        let mut out = Vec::new();
        for t in ts {
            match self.term(t) {
                TermKind::True => continue,
                TermKind::False => return self.mk_false(),
                _ => {
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        match out.len() {
            0 => self.mk_true(),
            1 => out[0],
            _ => self.intern(TermKind::And(out)),
        }
    }

    pub fn mk_or(&self, ts: Vec<TermId>) -> TermId {
        let mut out = Vec::new();
        for t in ts {
            match self.term(t) {
                TermKind::False => continue,
                TermKind::True => return self.mk_true(),
                _ => {
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        match out.len() {
            0 => self.mk_false(),
            1 => out[0],
            _ => self.intern(TermKind::Or(out)),
        }
    }

    /// Literal form of a term: polarity-stripped atom or compound.
    pub fn lit_of(&self, t: TermId) -> Lit {
        match self.term(t) {
            TermKind::Not(s) => self.lit_of(s).negated(),
            _ => Lit::new(t, true),
        }
    }

    pub fn lit_term(&self, l: Lit) -> TermId {
        if l.pos {
            l.atom
        } else {
            self.mk_not(l.atom)
        }
    }

    pub fn clause_term(&self, c: &Clause) -> TermId {
        let ts = c.lits().iter().map(|l| self.lit_term(*l)).collect();
        self.mk_or(ts)
    }

    /// All variables of a term, memoized.
    pub fn term_vars(&self, t: TermId) -> Rc<Vec<Var>> {
        if let Some(vs) = self.inner.borrow().term_vars.get(&t) {
            return vs.clone();
        }
        let mut set: std::collections::BTreeSet<Var> = Default::default();
        match self.term(t) {
            TermKind::True | TermKind::False => {}
            TermKind::BoolVar(v) => {
                set.insert(v);
            }
            TermKind::PolyAtom { poly, .. } => set.extend(poly.vars()),
            TermKind::ExtendedAtom { var, poly, .. } => {
                set.insert(var);
                set.extend(poly.vars());
            }
            TermKind::Not(s) => set.extend(self.term_vars(s).iter().copied()),
            TermKind::And(ts) | TermKind::Or(ts) => {
                for s in ts {
                    set.extend(self.term_vars(s).iter().copied());
                }
            }
        }
        let rc = Rc::new(set.into_iter().collect::<Vec<_>>());
        self.inner
            .borrow_mut()
            .term_vars
            .insert(t, rc.clone());
        rc
    }

    /// True for terms the Boolean/arithmetic plugins treat as assignable
    /// atoms (everything except Not, which is polarity).
    pub fn is_atomic(&self, t: TermId) -> bool {
        !matches!(self.term(t), TermKind::Not(_))
    }

    pub fn is_arith_atom(&self, t: TermId) -> bool {
        matches!(
            self.term(t),
            TermKind::PolyAtom { .. } | TermKind::ExtendedAtom { .. }
        )
    }
}

/// Rebuilds a term of `from` inside `to`, renaming variables via `var_map`
/// (identity for unmapped variables). Polynomials are re-canonicalized under
/// the target order. Extended atoms are rejected: they are solver output,
/// not transferable input.
pub fn map_term(
    from: &Ctx,
    to: &Ctx,
    t: TermId,
    var_map: &HashMap<Var, Var>,
) -> Result<TermId> {
    let order = to.order();
    match from.term(t) {
        TermKind::True => Ok(to.mk_true()),
        TermKind::False => Ok(to.mk_false()),
        TermKind::BoolVar(v) => to.mk_bool_var(*var_map.get(&v).unwrap_or(&v)),
        TermKind::PolyAtom { poly, rel } => {
            Ok(to.mk_poly_atom(poly.rename_vars(&order, var_map), rel))
        }
        TermKind::ExtendedAtom { .. } => Err(Error::Precondition(
            "extended constraints cannot be transferred between contexts".into(),
        )),
        TermKind::Not(s) => {
            let s2 = map_term(from, to, s, var_map)?;
            Ok(to.mk_not(s2))
        }
        TermKind::And(ts) => {
            let mut out = Vec::with_capacity(ts.len());
            for s in ts {
                out.push(map_term(from, to, s, var_map)?);
            }
            Ok(to.mk_and(out))
        }
        TermKind::Or(ts) => {
            let mut out = Vec::with_capacity(ts.len());
            for s in ts {
                out.push(map_term(from, to, s, var_map)?);
            }
            Ok(to.mk_or(out))
        }
    }
}

/// Three-valued evaluation of a term under a partial assignment. Extended
/// constraints with fewer than `k` real roots evaluate to false; an extended
/// constraint whose own variable is unassigned is undetermined.
pub fn evaluate(ctx: &Ctx, t: TermId, asg: &Assignment) -> TruthValue {
    let order = ctx.order();
    match ctx.term(t) {
        TermKind::True => TruthValue::True,
        TermKind::False => TruthValue::False,
        TermKind::BoolVar(v) => match asg.get(v) {
            Some(Value::Bool(b)) => TruthValue::from_bool(*b),
            _ => TruthValue::Undetermined,
        },
        TermKind::PolyAtom { poly, rel } => {
            let vars = poly.vars();
            match asg.real_point_for(vars) {
                Ok(pt) => match realalg::sign_at(&order, &poly, &pt) {
                    Ok(s) => TruthValue::from_bool(rel.eval_sign(s)),
                    Err(_) => TruthValue::Undetermined,
                },
                Err(_) => TruthValue::Undetermined,
            }
        }
        TermKind::ExtendedAtom { var, rel, poly, k } => {
            let lower: Vec<Var> = poly.vars().into_iter().filter(|v| *v != var).collect();
            let Ok(pt) = asg.real_point_for(lower) else {
                return TruthValue::Undetermined;
            };
            let Some(Value::Real(xval)) = asg.get(var) else {
                return TruthValue::Undetermined;
            };
            match realalg::roots_at(&order, &poly, &pt, var) {
                Ok(RootsAt::Roots(roots)) if roots.len() >= k as usize => {
                    let alpha = &roots[k as usize - 1];
                    let s = match xval.compare(alpha) {
                        Ordering::Less => -1,
                        Ordering::Equal => 0,
                        Ordering::Greater => 1,
                    };
                    TruthValue::from_bool(rel.eval_sign(s))
                }
                // Fewer than k roots (including the vanishing and root-free
                // cases): the constraint evaluates to false.
                Ok(_) => TruthValue::False,
                Err(_) => TruthValue::Undetermined,
            }
        }
        TermKind::Not(s) => evaluate(ctx, s, asg).not(),
        TermKind::And(ts) => {
            let mut acc = TruthValue::True;
            for s in ts {
                match evaluate(ctx, s, asg) {
                    TruthValue::False => return TruthValue::False,
                    TruthValue::Undetermined => acc = TruthValue::Undetermined,
                    TruthValue::True => {}
                }
            }
            acc
        }
        TermKind::Or(ts) => {
            let mut acc = TruthValue::False;
            for s in ts {
                match evaluate(ctx, s, asg) {
                    TruthValue::True => return TruthValue::True,
                    TruthValue::Undetermined => acc = TruthValue::Undetermined,
                    TruthValue::False => {}
                }
            }
            acc
        }
    }
}

/// Evaluates a literal.
pub fn evaluate_lit(ctx: &Ctx, l: Lit, asg: &Assignment) -> TruthValue {
    let v = evaluate(ctx, l.atom, asg);
    if l.pos {
        v
    } else {
        v.not()
    }
}

/// Evaluates a clause (disjunction of its literals).
pub fn evaluate_clause(ctx: &Ctx, c: &Clause, asg: &Assignment) -> TruthValue {
    let mut acc = TruthValue::False;
    for l in c.lits() {
        match evaluate_lit(ctx, *l, asg) {
            TruthValue::True => return TruthValue::True,
            TruthValue::Undetermined => acc = TruthValue::Undetermined,
            TruthValue::False => {}
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Int;

    fn ctx_xy() -> (Ctx, Var, Var) {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        (ctx, x, y)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant_i64(n)
    }

    fn circle(ctx: &Ctx, x: Var, y: Var) -> Polynomial {
        let o = ctx.order();
        Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2))
    }

    #[test]
    fn evaluate_poly_atom() {
        let (ctx, x, y) = ctx_xy();
        let atom = ctx.mk_poly_atom(circle(&ctx, x, y), Rel::Lt);
        let mut asg = Assignment::new();
        asg.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        assert_eq!(evaluate(&ctx, atom, &asg), TruthValue::Undetermined);
        asg.insert(y, Value::Real(AlgebraicNumber::from_int(0)));
        assert_eq!(evaluate(&ctx, atom, &asg), TruthValue::True);
    }

    #[test]
    fn evaluate_extended() {
        let (ctx, x, _) = ctx_xy();
        let o = ctx.order();
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        // x >_r root(x^2-2, 2, x) at x = 2 is true
        let e = ctx.mk_extended(x, Rel::Gt, f, 2).unwrap();
        let mut asg = Assignment::new();
        asg.insert(x, Value::Real(AlgebraicNumber::from_int(2)));
        assert_eq!(evaluate(&ctx, e, &asg), TruthValue::True);

        // x <_r root(x^2+1, 1, x) at x = 0: no real roots, so false
        let g = Polynomial::var(x).pow(&o, 2).add(&o, &c(1));
        let e2 = ctx.mk_extended(x, Rel::Lt, g, 1).unwrap();
        let mut asg = Assignment::new();
        asg.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        assert_eq!(evaluate(&ctx, e2, &asg), TruthValue::False);

        // unassigned variable: undetermined
        let asg = Assignment::new();
        assert_eq!(evaluate(&ctx, e, &asg), TruthValue::Undetermined);
    }

    #[test]
    fn negation_duality() {
        let (ctx, x, y) = ctx_xy();
        let atom = ctx.mk_poly_atom(circle(&ctx, x, y), Rel::Lt);
        let f = ctx.mk_and(vec![atom, ctx.mk_bool_var_helper("b")]);
        let nf = ctx.mk_not(f);
        let mut asg = Assignment::new();
        asg.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        for _ in 0..2 {
            assert_eq!(evaluate(&ctx, nf, &asg), evaluate(&ctx, f, &asg).not());
            asg.insert(y, Value::Real(AlgebraicNumber::from_int(0)));
        }
    }

    #[test]
    fn monotone_evaluation() {
        let (ctx, x, y) = ctx_xy();
        let atom = ctx.mk_poly_atom(circle(&ctx, x, y), Rel::Lt);
        let mut asg = Assignment::new();
        asg.insert(x, Value::Real(AlgebraicNumber::from_int(1)));
        let before = evaluate(&ctx, atom, &asg);
        assert_eq!(before, TruthValue::Undetermined);
        asg.insert(y, Value::Real(AlgebraicNumber::from_int(0)));
        // resolved to a definite value, never flipped
        assert_ne!(evaluate(&ctx, atom, &asg), TruthValue::Undetermined);
    }

    #[test]
    fn union_and_restrict() {
        let (_ctx, x, y) = ctx_xy();
        let mut m1 = Assignment::new();
        m1.insert(x, Value::Real(AlgebraicNumber::from_int(1)));
        let mut m2 = Assignment::new();
        m2.insert(x, Value::rat(Rat::from(Int::from(1))));
        m2.insert(y, Value::Real(AlgebraicNumber::from_int(2)));
        let u = m1.union(&m2).expect("agreeing assignments");
        assert_eq!(u.len(), 2);
        let mut m3 = Assignment::new();
        m3.insert(x, Value::Real(AlgebraicNumber::from_int(5)));
        assert!(m1.union(&m3).is_none());
        let keep: HashSet<Var> = [y].into_iter().collect();
        assert_eq!(u.restrict(&keep).len(), 1);
    }

    #[test]
    fn atom_normalization() {
        let (ctx, x, y) = ctx_xy();
        let o = ctx.order();
        // 2y > 0 normalizes to y > 0
        let a = ctx.mk_poly_atom(
            Polynomial::var(y).mul(&o, &Polynomial::constant_i64(2)),
            Rel::Gt,
        );
        let b = ctx.mk_poly_atom(Polynomial::var(y), Rel::Gt);
        assert_eq!(a, b);
        // -x < 0 normalizes to x > 0
        let c1 = ctx.mk_poly_atom(Polynomial::var(x).neg(), Rel::Lt);
        let c2 = ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt);
        assert_eq!(c1, c2);
        // constants decide
        assert_eq!(
            ctx.mk_poly_atom(Polynomial::constant_i64(3), Rel::Gt),
            ctx.mk_true()
        );
    }

    impl Ctx {
        fn mk_bool_var_helper(&self, name: &str) -> TermId {
            let v = self
                .lookup_var(name)
                .unwrap_or_else(|| self.declare_var(name, Sort::Bool).unwrap());
            self.mk_bool_var(v).unwrap()
        }
    }
}
