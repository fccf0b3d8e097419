//! Model-constructing search with solving modulo a partial model.
//!
//! The core loop interleaves propagation, decisions and conflict analysis.
//! Variables of the input model are decided before any other term and are
//! never resolved: conflict analysis stops at them, and the final analysis
//! resolves all remaining propagations so the returned clause evaluates to
//! false purely under the input model, making it a model interpolant.
//!
//! Asserted formulas are clausified by naming compound Boolean structure
//! (the hash-consed term is its own name); the Boolean plugin performs unit
//! propagation over the clause database with evaluation-aware literal
//! values, and the arithmetic plugin narrows per-variable feasible sets from
//! unit constraints. Learned clauses are reduced to basic constraints at
//! learn time, so extended literals appear only in conflict clauses and in
//! the returned interpolants.

pub mod explain;
pub mod feasible;
pub mod trail;

pub use trail::{Trail, TrailElement, TrailItem, TrailKind};

use crate::cad;
use crate::error::{Error, Result};
use crate::model::{
    self, Assignment, Clause, Ctx, Lit, TermId, TermKind, TruthValue, Value,
};
use crate::poly::{Sort, Var};
use feasible::FeasibleSet;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub iterations: u64,
}

#[derive(Debug, Clone)]
pub enum CheckResult {
    Sat(Assignment),
    Unsat(Clause),
}

impl CheckResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, CheckResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            CheckResult::Sat(m) => Some(m),
            _ => None,
        }
    }

    pub fn interpolant(&self) -> Option<&Clause> {
        match self {
            CheckResult::Unsat(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum QueueItem {
    Term(TermId),
    RealVar(Var),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LStat {
    Sat,
    Falsified,
    Unassigned,
}

enum Analysis {
    Final(Clause),
    Backjump(Clause, usize),
}

pub struct Solver {
    ctx: Ctx,
    assertions: Vec<TermId>,
    inconsistent: bool,
    clauses: Vec<Clause>,
    defined: HashSet<TermId>,
    registered: HashSet<TermId>,
    registered_vars: HashSet<Var>,
    queue: Vec<QueueItem>,
    trail: Trail,
    stats: SolverStats,
}

impl Solver {
    pub fn new(ctx: Ctx) -> Self {
        Solver {
            trail: Trail::new(ctx.clone()),
            ctx,
            assertions: vec![],
            inconsistent: false,
            clauses: vec![],
            defined: HashSet::new(),
            registered: HashSet::new(),
            registered_vars: HashSet::new(),
            queue: vec![],
            stats: SolverStats::default(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn assertions(&self) -> &[TermId] {
        &self.assertions
    }

    /// Records a formula: collects relevant terms, adds defining clauses for
    /// named compounds, and queues the unit clause of the formula itself.
    pub fn assert_formula(&mut self, f: TermId) {
        self.assertions.push(f);
        match self.ctx.term(f) {
            TermKind::True => return,
            TermKind::False => {
                self.inconsistent = true;
                return;
            }
            _ => {}
        }
        self.register_formula(f);
        let unit = Clause::new(vec![self.ctx.lit_of(f)]);
        self.add_clause(unit);
    }

    pub fn assert_clause(&mut self, c: &Clause) {
        let t = self.ctx.clause_term(c);
        self.assert_formula(t);
    }

    fn register_formula(&mut self, f: TermId) {
        match self.ctx.term(f) {
            TermKind::True | TermKind::False => {}
            TermKind::Not(s) => self.register_formula(s),
            TermKind::BoolVar(_) | TermKind::PolyAtom { .. } | TermKind::ExtendedAtom { .. } => {
                self.register_atom(f);
            }
            TermKind::And(ts) | TermKind::Or(ts) => {
                self.register_atom(f);
                for s in &ts {
                    self.register_formula(*s);
                }
                self.add_defining_clauses(f, &ts);
            }
        }
    }

    fn register_atom(&mut self, t: TermId) {
        if !self.registered.insert(t) {
            return;
        }
        self.queue.push(QueueItem::Term(t));
        for v in self.ctx.term_vars(t).iter() {
            if self.ctx.var_sort(*v) == Sort::Real && self.registered_vars.insert(*v) {
                self.queue.push(QueueItem::RealVar(*v));
            }
        }
    }

    fn add_defining_clauses(&mut self, t: TermId, children: &[TermId]) {
        if !self.defined.insert(t) {
            return;
        }
        let this = Lit::new(t, true);
        let lits: Vec<Lit> = children.iter().map(|c| self.ctx.lit_of(*c)).collect();
        match self.ctx.term(t) {
            TermKind::And(_) => {
                for l in &lits {
                    self.add_clause(Clause::new(vec![this.negated(), *l]));
                }
                let mut big = vec![this];
                big.extend(lits.iter().map(|l| l.negated()));
                self.add_clause(Clause::new(big));
            }
            TermKind::Or(_) => {
                let mut big = vec![this.negated()];
                big.extend(lits.iter().copied());
                self.add_clause(Clause::new(big));
                for l in &lits {
                    self.add_clause(Clause::new(vec![this, l.negated()]));
                }
            }
            _ => unreachable!(),
        }
    }

    fn add_clause(&mut self, c: Clause) {
        if self.clauses.iter().any(|d| d.same_lits(&c)) {
            return;
        }
        for l in c.lits() {
            self.register_atom(l.atom);
        }
        self.clauses.push(c);
    }

    /// Value of a literal for clause scanning: the assignment route if the
    /// atom is on the trail, otherwise the computed route.
    fn lit_status(&self, l: Lit) -> LStat {
        if let Some(b) = self.trail.lit_assigned_value(l) {
            return if b { LStat::Sat } else { LStat::Falsified };
        }
        match self.trail.computed_value(l.atom) {
            Some(b) => {
                if b == l.pos {
                    LStat::Sat
                } else {
                    LStat::Falsified
                }
            }
            None => LStat::Unassigned,
        }
    }

    /// Assigned arithmetic atoms that are unit over `x`.
    fn units_over(&self, x: Var) -> Vec<(TermId, bool)> {
        let mut out = Vec::new();
        for e in self.trail.elements() {
            let TrailItem::Term { term, value } = &e.item else {
                continue;
            };
            if !self.ctx.is_arith_atom(*term) {
                continue;
            }
            let vars = self.ctx.term_vars(*term);
            let mut unassigned = vars.iter().filter(|v| !self.trail.is_var_assigned(**v));
            match (unassigned.next(), unassigned.next()) {
                (Some(&v), None) if v == x => out.push((*term, *value)),
                _ => {}
            }
        }
        out
    }

    fn feasible_for(&self, x: Var, units: &[(TermId, bool)]) -> Result<FeasibleSet> {
        let mut acc = FeasibleSet::full();
        for (t, b) in units {
            acc = acc.intersect(&explain::atom_feasible(&self.ctx, &self.trail, *t, *b, x)?);
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    /// Propagation to fixpoint; returns a conflict clause if the trail
    /// became evaluation- or unit-inconsistent.
    fn propagate(&mut self) -> Result<Option<Clause>> {
        loop {
            // Evaluation consistency: an assigned constraint computing the
            // opposite value is explained by the tautology clause.
            for e in self.trail.elements() {
                let TrailItem::Term { term, value } = &e.item else {
                    continue;
                };
                if !self.ctx.is_arith_atom(*term) {
                    continue;
                }
                if let Some(v) = self.trail.computed_value(*term) {
                    if v != *value {
                        return Ok(Some(Clause::new(vec![
                            Lit::new(*term, false),
                            Lit::new(*term, true),
                        ])));
                    }
                }
            }
            // Boolean unit propagation with evaluation-aware literals.
            let mut changed = false;
            for ci in 0..self.clauses.len() {
                let clause = self.clauses[ci].clone();
                let mut satisfied = false;
                let mut unassigned: Vec<Lit> = Vec::new();
                for l in clause.lits() {
                    match self.lit_status(*l) {
                        LStat::Sat => {
                            satisfied = true;
                            break;
                        }
                        LStat::Falsified => {}
                        LStat::Unassigned => unassigned.push(*l),
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned.len() {
                    0 => return Ok(Some(clause)),
                    1 => {
                        let l = unassigned[0];
                        self.trail
                            .push_term(l.atom, l.pos, TrailKind::Propagation(clause));
                        self.stats.propagations += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if changed {
                continue;
            }
            // Arithmetic unit consistency.
            let vars: Vec<Var> = self
                .queue
                .iter()
                .filter_map(|q| match q {
                    QueueItem::RealVar(v) if !self.trail.is_var_assigned(*v) => Some(*v),
                    _ => None,
                })
                .collect();
            for x in vars {
                let units = self.units_over(x);
                if units.is_empty() {
                    continue;
                }
                if self.feasible_for(x, &units)?.is_empty() {
                    let c = explain::explain_unit_conflict(&self.ctx, &self.trail, x, &units)?;
                    return Ok(Some(c));
                }
            }
            return Ok(None);
        }
    }

    fn decide_term(&mut self, t: TermId) {
        let value = self.trail.computed_value(t).unwrap_or(true);
        self.trail.push_term(t, value, TrailKind::Decision);
        self.stats.decisions += 1;
    }

    fn decide_real(&mut self, x: Var) -> Result<()> {
        let units = self.units_over(x);
        let feasible = self.feasible_for(x, &units)?;
        let value = feasible
            .pick_value()
            .expect("decision on a unit-consistent trail must have a feasible value");
        self.trail.push_var(x, Value::Real(value), TrailKind::Decision);
        self.stats.decisions += 1;
        Ok(())
    }

    /// True when the literal is already false with respect to the trail
    /// prefix strictly below position `i`: either its atom is assigned the
    /// opposite value there, or it is an arithmetic atom whose variables are
    /// all assigned there and the evaluation comes out false.
    fn falsified_below(&self, l: Lit, i: usize) -> bool {
        if let Some((b, p)) = self.trail.term_value_pos(l.atom) {
            if p < i && b != l.pos {
                return true;
            }
        }
        if self.ctx.is_arith_atom(l.atom) {
            let vars = self.ctx.term_vars(l.atom);
            let below = vars
                .iter()
                .all(|v| self.trail.var_pos(*v).map(|p| p < i).unwrap_or(false));
            if below && self.trail.evaluate_lit(l) == TruthValue::False {
                return true;
            }
        }
        false
    }

    /// A valid clause justifying the computed value of an unassigned named
    /// compound: one of its defining clauses, with every literal other than
    /// the compound's false on the trail.
    fn justifying_clause(&self, t: TermId, computed: bool) -> Clause {
        let lits_of = |ts: &[TermId]| -> Vec<Lit> {
            ts.iter().map(|s| self.ctx.lit_of(*s)).collect()
        };
        match (self.ctx.term(t), computed) {
            (TermKind::And(ts), false) => {
                let ls = lits_of(&ts);
                let falsum = ls
                    .iter()
                    .find(|l| self.trail.lit_assigned_value(**l) == Some(false))
                    .expect("a conjunction computing false has a false child");
                Clause::new(vec![Lit::new(t, false), *falsum])
            }
            (TermKind::And(ts), true) => {
                let mut out = vec![Lit::new(t, true)];
                out.extend(lits_of(&ts).iter().map(|l| l.negated()));
                Clause::new(out)
            }
            (TermKind::Or(ts), true) => {
                let ls = lits_of(&ts);
                let verum = ls
                    .iter()
                    .find(|l| self.trail.lit_assigned_value(**l) == Some(true))
                    .expect("a disjunction computing true has a true child");
                Clause::new(vec![Lit::new(t, true), verum.negated()])
            }
            (TermKind::Or(ts), false) => {
                let mut out = vec![Lit::new(t, false)];
                out.extend(lits_of(&ts));
                Clause::new(out)
            }
            _ => unreachable!("justification only applies to named compounds"),
        }
    }

    /// Resolves away literals of unassigned compounds that are falsified
    /// through their children, so the remaining literals are falsified by
    /// assignments or by arithmetic evaluation only.
    fn resolve_computed_compounds(&self, mut c: Clause) -> Clause {
        loop {
            let found = c.lits().iter().copied().find(|l| {
                matches!(self.ctx.term(l.atom), TermKind::And(_) | TermKind::Or(_))
                    && self.trail.term_value(l.atom).is_none()
                    && self.trail.computed_value(l.atom) == Some(!l.pos)
            });
            let Some(l) = found else { return c };
            let reason = self.justifying_clause(l.atom, !l.pos);
            c = c.resolve(&reason, l.atom, !l.pos);
        }
    }

    /// Backtracks while resolving propagations out of the conflict clause:
    /// an element is relevant when popping it would release a literal (no
    /// falsification survives below it). Model-decision elements end the
    /// analysis as final.
    fn analyze(&mut self, conflict: Clause) -> Analysis {
        debug_assert!(
            conflict
                .lits()
                .iter()
                .all(|l| self.trail.can_evaluate(*l, false)),
            "not a conflict clause: {conflict:?}"
        );
        let mut c = self.resolve_computed_compounds(conflict);
        let mut i = self.trail.len();
        while i > 0 {
            i -= 1;
            if c.is_empty() {
                return Analysis::Final(c);
            }
            let released = c.lits().iter().any(|l| !self.falsified_below(*l, i));
            if !released {
                continue;
            }
            let e = self.trail.element(i).clone();
            match (&e.item, &e.kind) {
                (TrailItem::Term { term, value }, TrailKind::Propagation(reason)) => {
                    c = c.resolve(reason, *term, *value);
                    c = self.resolve_computed_compounds(c);
                }
                (_, TrailKind::Decision) => return Analysis::Backjump(c, i),
                (_, TrailKind::ModelDecision) => return Analysis::Final(c),
                (TrailItem::Var { .. }, TrailKind::Propagation(_)) => {
                    unreachable!("variables are never propagated")
                }
            }
        }
        Analysis::Final(c)
    }

    /// Resolves all remaining trail propagations out of the final conflict
    /// clause: every literal of the result evaluates to false solely under
    /// the input model assignment.
    fn analyze_final(&mut self, mut c: Clause) -> Clause {
        c = self.resolve_computed_compounds(c);
        let mut i = self.trail.len();
        while i > 0 {
            i -= 1;
            let e = self.trail.element(i).clone();
            if let (TrailItem::Term { term, value }, TrailKind::Propagation(reason)) =
                (&e.item, &e.kind)
            {
                let falsified = Lit::new(*term, !*value);
                if c.contains(&falsified) {
                    c = c.resolve(reason, *term, *value);
                    c = self.resolve_computed_compounds(c);
                }
            }
        }
        c
    }

    fn backtrack_with(&mut self, c: Clause, stop: usize) -> Result<()> {
        self.trail.truncate(stop);
        self.add_clause(c.clone());
        let mut unassigned: Vec<Lit> = Vec::new();
        for l in c.lits() {
            match self.lit_status(*l) {
                LStat::Sat => return Ok(()),
                LStat::Falsified => {}
                LStat::Unassigned => unassigned.push(*l),
            }
        }
        match unassigned.len() {
            0 => panic!("conflict clause still falsified after backtracking: {c:?}"),
            1 => {
                let l = unassigned[0];
                self.trail
                    .push_term(l.atom, l.pos, TrailKind::Propagation(c));
                self.stats.propagations += 1;
            }
            _ => {
                // Several literals were freed by the popped assignment:
                // decide one to force a different region next time.
                let l = unassigned[0];
                self.trail.push_term(l.atom, l.pos, TrailKind::Decision);
                self.stats.decisions += 1;
            }
        }
        Ok(())
    }

    pub fn check(&mut self) -> Result<CheckResult> {
        self.check_modulo(&Assignment::new())
    }

    /// Checks satisfiability of the asserted formulas modulo the partial
    /// model: Sat returns a total model extending it, Unsat returns a model
    /// interpolant that is implied by the assertions and false under it.
    pub fn check_modulo(&mut self, m0: &Assignment) -> Result<CheckResult> {
        for (v, val) in m0.iter() {
            match (self.ctx.var_sort(*v), val) {
                (Sort::Bool, Value::Bool(_)) | (Sort::Real, Value::Real(_)) => {}
                _ => {
                    return Err(Error::Sort(format!(
                        "model value for {} has the wrong sort",
                        self.ctx.var_name(*v)
                    )))
                }
            }
        }
        self.trail.clear();
        if self.inconsistent {
            return Ok(CheckResult::Unsat(Clause::empty()));
        }
        #[cfg(debug_assertions)]
        let mut seen_states: HashSet<u64> = HashSet::new();
        let mut rounds: u64 = 0;
        loop {
            rounds += 1;
            self.stats.iterations += 1;
            if rounds > 1_000_000 {
                return Err(Error::IterationLimit("mcsat main loop".into()));
            }
            if let Some(conflict) = self.propagate()? {
                self.stats.conflicts += 1;
                let mut cur = conflict;
                let mut passes = 0;
                loop {
                    passes += 1;
                    assert!(passes < 1000, "conflict analysis did not settle");
                    match self.analyze(cur) {
                        Analysis::Final(c) => {
                            let interpolant = self.analyze_final(c);
                            self.verify_interpolant(&interpolant, m0);
                            return Ok(CheckResult::Unsat(interpolant));
                        }
                        Analysis::Backjump(c, stop) => {
                            // Learned clauses stay in the basic language:
                            // extended literals are replaced by basic cell
                            // bounds at the current point, and the basic
                            // form is re-analyzed for its own backjump
                            // level.
                            let basic = cad::replace_extended_literals(
                                &self.ctx,
                                &c,
                                self.trail.assignment(),
                            )?;
                            if basic.same_lits(&c) {
                                self.backtrack_with(basic, stop)?;
                                break;
                            }
                            cur = basic;
                        }
                    }
                }
                #[cfg(debug_assertions)]
                {
                    let sig = self.state_signature();
                    assert!(
                        seen_states.insert(sig),
                        "trail state repeated after a conflict"
                    );
                }
                continue;
            }
            // Extension: input-model variables are decided before any other
            // term, in the order given.
            if let Some((v, val)) = m0
                .iter()
                .find(|(v, _)| !self.trail.is_var_assigned(*v))
                .cloned()
            {
                match val {
                    Value::Bool(b) => {
                        let t = self.ctx.mk_bool_var(v).expect("sort checked above");
                        self.trail.push_term(t, b, TrailKind::ModelDecision);
                    }
                    Value::Real(_) => {
                        self.trail.push_var(v, val, TrailKind::ModelDecision);
                    }
                }
                self.stats.decisions += 1;
                continue;
            }
            // Queue decisions in registration order.
            let next = self.queue.iter().copied().find(|item| match item {
                QueueItem::Term(t) => self.trail.term_value(*t).is_none(),
                QueueItem::RealVar(v) => !self.trail.is_var_assigned(*v),
            });
            match next {
                Some(QueueItem::Term(t)) => {
                    self.decide_term(t);
                    continue;
                }
                Some(QueueItem::RealVar(v)) => {
                    self.decide_real(v)?;
                    continue;
                }
                None => {
                    let model = self.trail.assignment().clone();
                    self.verify_model(&model, m0);
                    return Ok(CheckResult::Sat(model));
                }
            }
        }
    }

    fn verify_model(&self, model: &Assignment, m0: &Assignment) {
        for (v, val) in m0.iter() {
            let got = model.get(*v).expect("model must extend the input model");
            assert!(
                got.semantically_eq(val),
                "model does not extend the input assignment on {}",
                self.ctx.var_name(*v)
            );
        }
        for f in &self.assertions {
            assert_eq!(
                model::evaluate(&self.ctx, *f, model),
                TruthValue::True,
                "sat model does not satisfy an assertion"
            );
        }
    }

    fn verify_interpolant(&self, interpolant: &Clause, m0: &Assignment) {
        assert_eq!(
            model::evaluate_clause(&self.ctx, interpolant, m0),
            TruthValue::False,
            "model interpolant must evaluate to false under the input model"
        );
        for l in interpolant.lits() {
            for v in self.ctx.term_vars(l.atom).iter() {
                assert!(
                    m0.contains(*v),
                    "interpolant literal mentions a non-model variable {}",
                    self.ctx.var_name(*v)
                );
            }
        }
    }

    #[cfg(debug_assertions)]
    fn state_signature(&self) -> u64 {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let mut h = DefaultHasher::new();
        self.clauses.len().hash(&mut h);
        for e in self.trail.elements() {
            match &e.item {
                TrailItem::Term { term, value } => {
                    0u8.hash(&mut h);
                    term.0.hash(&mut h);
                    value.hash(&mut h);
                }
                TrailItem::Var { var, value } => {
                    1u8.hash(&mut h);
                    var.0.hash(&mut h);
                    format!("{value:?}").hash(&mut h);
                }
            }
        }
        h.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::realalg::AlgebraicNumber;

    fn c(n: i64) -> Polynomial {
        Polynomial::constant_i64(n)
    }

    /// Example setup: assert b and (not b or x^2 + y^2 < 2).
    fn paper_example(ctx: &Ctx) -> (Solver, Var, Var, TermId) {
        let b = ctx.declare_var("b", Sort::Bool).unwrap();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let circle = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let catom = ctx.mk_poly_atom(circle, Rel::Lt);
        let bt = ctx.mk_bool_var(b).unwrap();
        let f2 = ctx.mk_or(vec![ctx.mk_not(bt), catom]);
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(bt);
        s.assert_formula(f2);
        (s, x, y, catom)
    }

    use crate::model::Rel;

    #[test]
    fn unsat_modulo_model_produces_extended_interpolant() {
        let ctx = Ctx::new();
        let (mut s, x, _y, _catom) = paper_example(&ctx);
        let mut m0 = Assignment::new();
        m0.insert(x, Value::Real(AlgebraicNumber::from_int(2)));
        let r = s.check_modulo(&m0).unwrap();
        let interp = r.interpolant().expect("unsat expected");
        // I = not (x >_r root(x^2-2, 2, x))
        assert_eq!(interp.len(), 1);
        let l = interp.lits()[0];
        assert!(!l.pos);
        let o = ctx.order();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        assert_eq!(
            ctx.term(l.atom),
            TermKind::ExtendedAtom {
                var: x,
                rel: Rel::Gt,
                poly: xsq,
                k: 2
            }
        );
    }

    #[test]
    fn sat_modulo_model_extends() {
        let ctx = Ctx::new();
        let (mut s, x, y, _) = paper_example(&ctx);
        let mut m0 = Assignment::new();
        m0.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        let r = s.check_modulo(&m0).unwrap();
        let m = r.model().expect("sat expected");
        assert!(m.get(y).is_some());
        assert!(m
            .get(x)
            .unwrap()
            .semantically_eq(&Value::Real(AlgebraicNumber::from_int(0))));
    }

    #[test]
    fn trivial_cases() {
        let ctx = Ctx::new();
        let mut s = Solver::new(ctx.clone());
        // no assertions: sat with empty model over no relevant vars
        let r = s.check().unwrap();
        assert!(r.is_sat());
        // assert true: no-op
        s.assert_formula(ctx.mk_true());
        assert!(s.check().unwrap().is_sat());
        // assert false: unsat with the empty clause
        s.assert_formula(ctx.mk_false());
        let r = s.check().unwrap();
        assert!(r.interpolant().unwrap().is_empty());
    }

    #[test]
    fn direct_interval_conflict() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let a1 = ctx.mk_poly_atom(Polynomial::var(x), Rel::Lt);
        let a2 = ctx.mk_poly_atom(
            Polynomial::var(x).sub(&ctx.order(), &c(1)),
            Rel::Gt,
        );
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(a1);
        s.assert_formula(a2);
        let r = s.check().unwrap();
        assert!(r.interpolant().is_some());
    }

    #[test]
    fn globally_infeasible_constraint() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let o = ctx.order();
        // x^2 < 0
        let a = ctx.mk_poly_atom(Polynomial::var(x).pow(&o, 2), Rel::Lt);
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(a);
        let r = s.check().unwrap();
        assert!(!r.is_sat());
    }

    #[test]
    fn evaluation_conflict_recovers() {
        // The constraint is decided true, then the variable assignments
        // force the opposite value; the solver repairs and answers sat.
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let circle = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(1));
        let atom = ctx.mk_poly_atom(circle, Rel::Lt);
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(atom);
        let r = s.check().unwrap();
        let m = r.model().expect("x^2+y^2<1 is satisfiable");
        assert_eq!(
            model::evaluate(&ctx, atom, m),
            TruthValue::True
        );
    }

    #[test]
    fn nonlinear_combined() {
        // x*y > 1 and x + y = 2 forces x = y = 1... actually x*y > 1 with
        // x + y = 2 is infeasible over the reals (AM-GM: xy <= 1).
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let prod = Polynomial::var(x)
            .mul(&o, &Polynomial::var(y))
            .sub(&o, &c(1));
        let sum = Polynomial::var(x)
            .add(&o, &Polynomial::var(y))
            .sub(&o, &c(2));
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(ctx.mk_poly_atom(prod, Rel::Gt));
        s.assert_formula(ctx.mk_poly_atom(sum, Rel::Eq));
        let r = s.check().unwrap();
        assert!(!r.is_sat(), "AM-GM violation should be unsat");
    }

    #[test]
    fn sqrt2_equality_model() {
        // x^2 = 2 and x > 0 has only the algebraic model x = sqrt(2).
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let o = ctx.order();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(ctx.mk_poly_atom(xsq.clone(), Rel::Eq));
        s.assert_formula(ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt));
        let r = s.check().unwrap();
        let m = r.model().expect("satisfiable");
        let v = m.get(x).unwrap().as_real().unwrap().clone();
        assert_eq!(v.sign_of_upoly(&crate::realalg::to_upoly(&o, &xsq, x)), 0);
        assert!(!v.is_negative());
    }
}
