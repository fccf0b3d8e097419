//! Parsers and printers for the problem script language (`.nlsmt`) and the
//! transition-system format (`.nlts`).
//!
//! Rational constants are accepted as `(/ p q)` and decimal literals and are
//! cleared to integer polynomials at ingestion. Extended root constraints
//! are output-only syntax: they are printed in diagnostics but never parsed.

pub mod sexpr;

use crate::error::{Error, Result};
use crate::model::{Assignment, Clause, Ctx, Rel, TermId, TermKind, Value};
use crate::poly::{Int, Polynomial, Rat, Sort, Var};
use crate::realalg::{self, AlgebraicNumber};
use num_traits::{One, Zero};
use sexpr::{parse_all, Pos, SExpr};
use std::collections::HashMap;

/// A script command.
#[derive(Debug, Clone)]
pub enum Command {
    Assert(TermId),
    AssertA(TermId),
    AssertB(TermId),
    CheckSat,
    CheckSatAssumingModel(Vec<(Var, Rat)>),
    ComputeInterpolant,
    GetModel,
}

/// A parsed problem script: declarations are folded into the context.
#[derive(Clone)]
pub struct Script {
    pub ctx: Ctx,
    pub commands: Vec<Command>,
}

impl std::fmt::Debug for Script {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Script")
            .field("commands", &self.commands)
            .finish()
    }
}

/// A state-transition system: init and property range over the state
/// variables, the transition formula additionally over primed copies and
/// input variables.
pub struct TransitionSystem {
    pub ctx: Ctx,
    pub state_vars: Vec<Var>,
    pub primed: HashMap<Var, Var>,
    pub inputs: Vec<Var>,
    pub init: TermId,
    pub trans: TermId,
    pub prop: TermId,
}

impl std::fmt::Debug for TransitionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransitionSystem")
            .field("state_vars", &self.state_vars)
            .field("inputs", &self.inputs)
            .finish()
    }
}

/// Arithmetic term under construction: `poly / den` with `den > 0`.
#[derive(Debug, Clone)]
struct QPoly {
    poly: Polynomial,
    den: Int,
}

impl QPoly {
    fn constant(r: Rat) -> QPoly {
        QPoly {
            poly: Polynomial::constant(r.numer().clone()),
            den: r.denom().clone(),
        }
    }

    fn var(v: Var) -> QPoly {
        QPoly {
            poly: Polynomial::var(v),
            den: Int::one(),
        }
    }

    fn add(&self, ctx: &Ctx, other: &QPoly) -> QPoly {
        let o = ctx.order();
        QPoly {
            poly: self
                .poly
                .mul(&o, &Polynomial::constant(other.den.clone()))
                .add(&o, &other.poly.mul(&o, &Polynomial::constant(self.den.clone()))),
            den: &self.den * &other.den,
        }
    }

    fn neg(&self) -> QPoly {
        QPoly {
            poly: self.poly.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, ctx: &Ctx, other: &QPoly) -> QPoly {
        let o = ctx.order();
        QPoly {
            poly: self.poly.mul(&o, &other.poly),
            den: &self.den * &other.den,
        }
    }

    /// `self - other`, cleared to an integer polynomial by the positive
    /// common denominator.
    fn diff_cleared(&self, ctx: &Ctx, other: &QPoly) -> Polynomial {
        let o = ctx.order();
        self.poly
            .mul(&o, &Polynomial::constant(other.den.clone()))
            .sub(&o, &other.poly.mul(&o, &Polynomial::constant(self.den.clone())))
    }
}

fn parse_rational(s: &str, p: Pos) -> Result<Rat> {
    if let Some(dot) = s.find('.') {
        let (ip, fp) = s.split_at(dot);
        let fp = &fp[1..];
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(p.err(format!("malformed decimal literal `{s}`")));
        }
        let neg = ip.starts_with('-');
        let ipart: Int = ip
            .parse()
            .map_err(|_| p.err(format!("malformed decimal literal `{s}`")))?;
        let fpart: Int = fp
            .parse()
            .map_err(|_| p.err(format!("malformed decimal literal `{s}`")))?;
        let scale = Int::from(10).pow(fp.len() as u32);
        let num = &ipart * &scale + if neg { -fpart } else { fpart };
        Ok(Rat::new(num, scale))
    } else {
        let n: Int = s
            .parse()
            .map_err(|_| p.err(format!("malformed integer literal `{s}`")))?;
        Ok(Rat::from(n))
    }
}

fn is_numeric(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    !t.is_empty() && t.chars().next().unwrap().is_ascii_digit()
}

/// Either a Boolean term or an arithmetic value, as produced by the
/// recursive term builder.
enum Built {
    Bool(TermId),
    Arith(QPoly),
}

struct TermBuilder<'a> {
    ctx: &'a Ctx,
    /// Optional symbol filter: which declared variables are visible, with a
    /// description for error messages.
    lookup: &'a dyn Fn(&str) -> Option<Var>,
}

impl<'a> TermBuilder<'a> {
    fn build_bool(&self, e: &SExpr) -> Result<TermId> {
        match self.build(e)? {
            Built::Bool(t) => Ok(t),
            Built::Arith(_) => Err(e
                .pos()
                .err("expected a Boolean term, found an arithmetic term")),
        }
    }

    fn build_arith(&self, e: &SExpr) -> Result<QPoly> {
        match self.build(e)? {
            Built::Arith(q) => Ok(q),
            Built::Bool(_) => Err(e
                .pos()
                .err("expected an arithmetic term, found a Boolean term")),
        }
    }

    fn build(&self, e: &SExpr) -> Result<Built> {
        match e {
            SExpr::Atom(s, p) => {
                if s == "true" {
                    return Ok(Built::Bool(self.ctx.mk_true()));
                }
                if s == "false" {
                    return Ok(Built::Bool(self.ctx.mk_false()));
                }
                if is_numeric(s) {
                    return Ok(Built::Arith(QPoly::constant(parse_rational(s, *p)?)));
                }
                match (self.lookup)(s) {
                    Some(v) => match self.ctx.var_sort(v) {
                        Sort::Real => Ok(Built::Arith(QPoly::var(v))),
                        Sort::Bool => Ok(Built::Bool(self.ctx.mk_bool_var(v).unwrap())),
                    },
                    None => Err(p.err(format!("undeclared symbol `{s}`"))),
                }
            }
            SExpr::List(items, p) => {
                if items.is_empty() {
                    return Err(p.err("empty application"));
                }
                let head = items[0].as_atom()?;
                let args = &items[1..];
                match head {
                    "and" | "or" => {
                        let mut ts = Vec::with_capacity(args.len());
                        for a in args {
                            ts.push(self.build_bool(a)?);
                        }
                        Ok(Built::Bool(if head == "and" {
                            self.ctx.mk_and(ts)
                        } else {
                            self.ctx.mk_or(ts)
                        }))
                    }
                    "not" => {
                        if args.len() != 1 {
                            return Err(p.err("not takes exactly one argument"));
                        }
                        Ok(Built::Bool(self.ctx.mk_not(self.build_bool(&args[0])?)))
                    }
                    "+" => {
                        let mut acc = QPoly::constant(Rat::zero());
                        for a in args {
                            let q = self.build_arith(a)?;
                            acc = acc.add(self.ctx, &q);
                        }
                        Ok(Built::Arith(acc))
                    }
                    "-" => match args.len() {
                        0 => Err(p.err("- needs at least one argument")),
                        1 => Ok(Built::Arith(self.build_arith(&args[0])?.neg())),
                        _ => {
                            let mut acc = self.build_arith(&args[0])?;
                            for a in &args[1..] {
                                let q = self.build_arith(a)?.neg();
                                acc = acc.add(self.ctx, &q);
                            }
                            Ok(Built::Arith(acc))
                        }
                    },
                    "*" => {
                        let mut acc = QPoly::constant(Rat::one());
                        for a in args {
                            let q = self.build_arith(a)?;
                            acc = acc.mul(self.ctx, &q);
                        }
                        Ok(Built::Arith(acc))
                    }
                    "/" => {
                        if args.len() != 2 {
                            return Err(p.err("/ takes exactly two integer arguments"));
                        }
                        let n = parse_rational(args[0].as_atom()?, args[0].pos())?;
                        let d = parse_rational(args[1].as_atom()?, args[1].pos())?;
                        if d.is_zero() {
                            return Err(p.err("division by zero"));
                        }
                        Ok(Built::Arith(QPoly::constant(n / d)))
                    }
                    "<" | "<=" | "=" | ">=" | ">" => {
                        if args.len() != 2 {
                            return Err(p.err(format!("{head} takes exactly two arguments")));
                        }
                        let rel = match head {
                            "<" => Rel::Lt,
                            "<=" => Rel::Le,
                            "=" => Rel::Eq,
                            ">=" => Rel::Ge,
                            _ => Rel::Gt,
                        };
                        let a = self.build_arith(&args[0])?;
                        let b = self.build_arith(&args[1])?;
                        let f = a.diff_cleared(self.ctx, &b);
                        Ok(Built::Bool(self.ctx.mk_poly_atom(f, rel)))
                    }
                    _ => Err(p.err(format!("unknown operator `{head}`"))),
                }
            }
        }
    }
}

/// Parses a term against the declared symbols of `ctx`.
pub fn parse_term(ctx: &Ctx, e: &SExpr) -> Result<TermId> {
    let lookup = |s: &str| ctx.lookup_var(s);
    TermBuilder { ctx, lookup: &lookup }.build_bool(e)
}

/// Parses a problem script.
pub fn parse_script(text: &str) -> Result<Script> {
    let ctx = Ctx::new();
    let mut commands = Vec::new();
    let mut interpolant_seen = false;
    for e in parse_all(text)? {
        let items = e.as_list()?;
        if items.is_empty() {
            return Err(e.pos().err("empty command"));
        }
        let head = items[0].as_atom()?;
        match head {
            "declare-const" => {
                if items.len() != 3 {
                    return Err(e.pos().err("declare-const takes a symbol and a sort"));
                }
                let name = items[1].as_atom()?;
                let sort = match items[2].as_atom()? {
                    "Real" => Sort::Real,
                    "Bool" => Sort::Bool,
                    other => return Err(items[2].pos().err(format!("unknown sort `{other}`"))),
                };
                ctx.declare_var(name, sort).map_err(|err| match err {
                    Error::Sort(msg) => items[1].pos().err(msg),
                    other => other,
                })?;
            }
            "assert" | "assert-A" | "assert-B" => {
                if items.len() != 2 {
                    return Err(e.pos().err(format!("{head} takes exactly one term")));
                }
                let t = parse_term(&ctx, &items[1])?;
                commands.push(match head {
                    "assert" => Command::Assert(t),
                    "assert-A" => Command::AssertA(t),
                    _ => Command::AssertB(t),
                });
            }
            "check-sat" => commands.push(Command::CheckSat),
            "check-sat-assuming-model" => {
                let mut model = Vec::new();
                for pair in &items[1..] {
                    let kv = pair.as_list()?;
                    if kv.len() != 2 {
                        return Err(pair.pos().err("model entry must be (symbol constant)"));
                    }
                    let name = kv[0].as_atom()?;
                    let v = ctx
                        .lookup_var(name)
                        .ok_or_else(|| kv[0].pos().err(format!("undeclared symbol `{name}`")))?;
                    if ctx.var_sort(v) != Sort::Real {
                        return Err(kv[0].pos().err("model values must be Real"));
                    }
                    let q = parse_model_constant(&kv[1])?;
                    model.push((v, q));
                }
                commands.push(Command::CheckSatAssumingModel(model));
            }
            "compute-interpolant" => {
                if interpolant_seen {
                    return Err(e.pos().err("at most one compute-interpolant per script"));
                }
                interpolant_seen = true;
                commands.push(Command::ComputeInterpolant);
            }
            "get-model" => commands.push(Command::GetModel),
            other => return Err(e.pos().err(format!("unknown command `{other}`"))),
        }
    }
    Ok(Script { ctx, commands })
}

fn parse_model_constant(e: &SExpr) -> Result<Rat> {
    match e {
        SExpr::Atom(s, p) => parse_rational(s, *p),
        SExpr::List(items, p) => {
            // (/ p q) and (- c) forms
            if items.len() == 3 && items[0].as_atom()? == "/" {
                let n = parse_rational(items[1].as_atom()?, items[1].pos())?;
                let d = parse_rational(items[2].as_atom()?, items[2].pos())?;
                if d.is_zero() {
                    return Err(p.err("division by zero"));
                }
                return Ok(n / d);
            }
            if items.len() == 2 && items[0].as_atom()? == "-" {
                return Ok(-parse_model_constant(&items[1])?);
            }
            Err(p.err("model constants must be rational"))
        }
    }
}

/// Parses a transition-system file:
/// `(define-system :state ((s Real) …) :init t :trans t :prop t)`.
/// Primed symbols `s'` in the transition refer to the next-state copy;
/// undeclared unprimed symbols there become Real input variables.
pub fn parse_system(text: &str) -> Result<TransitionSystem> {
    let top = parse_all(text)?;
    let [e] = top.as_slice() else {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected exactly one define-system form".into(),
        });
    };
    let items = e.as_list()?;
    if items.is_empty() || items[0].as_atom()? != "define-system" {
        return Err(e.pos().err("expected (define-system ...)"));
    }
    let ctx = Ctx::new();
    let mut state_vars = Vec::new();
    let mut primed = HashMap::new();
    let mut init: Option<&SExpr> = None;
    let mut prop: Option<&SExpr> = None;
    let mut state_expr: Option<&SExpr> = None;
    let mut trans_expr: Option<&SExpr> = None;
    let mut i = 1;
    while i < items.len() {
        let key = items[i].as_atom()?;
        let Some(value) = items.get(i + 1) else {
            return Err(items[i].pos().err(format!("{key} needs a value")));
        };
        match key {
            ":state" => state_expr = Some(value),
            ":init" => init = Some(value),
            ":trans" => trans_expr = Some(value),
            ":prop" => prop = Some(value),
            other => return Err(items[i].pos().err(format!("unknown key `{other}`"))),
        }
        i += 2;
    }
    let state_expr = state_expr.ok_or_else(|| e.pos().err("missing :state"))?;
    for decl in state_expr.as_list()? {
        let kv = decl.as_list()?;
        if kv.len() != 2 || kv[1].as_atom()? != "Real" {
            return Err(decl.pos().err("state declarations are (name Real)"));
        }
        let name = kv[0].as_atom()?;
        let v = ctx.declare_var(name, Sort::Real).map_err(|err| match err {
            Error::Sort(msg) => kv[0].pos().err(msg),
            other => other,
        })?;
        state_vars.push(v);
    }
    for &v in &state_vars {
        let pname = format!("{}'", ctx.var_name(v));
        let pv = ctx.declare_var(&pname, Sort::Real)?;
        primed.insert(v, pv);
    }
    let init_expr = init.ok_or_else(|| e.pos().err("missing :init"))?;
    let trans_expr = trans_expr.ok_or_else(|| e.pos().err("missing :trans"))?;
    let prop_expr = prop.ok_or_else(|| e.pos().err("missing :prop"))?;

    // init and property: state vars only.
    let state_only = |s: &str| -> Option<Var> {
        ctx.lookup_var(s)
            .filter(|v| state_vars.contains(v))
    };
    let init_t = TermBuilder { ctx: &ctx, lookup: &state_only }.build_bool(init_expr)?;
    let prop_t = TermBuilder { ctx: &ctx, lookup: &state_only }.build_bool(prop_expr)?;

    // transition: state, primed, and auto-declared inputs. Primed symbols
    // without a matching state variable are rejected.
    let mut inputs: Vec<Var> = Vec::new();
    collect_trans_symbols(&ctx, trans_expr, &state_vars, &mut inputs)?;
    let trans_lookup = |s: &str| ctx.lookup_var(s);
    let trans_t = TermBuilder { ctx: &ctx, lookup: &trans_lookup }.build_bool(trans_expr)?;

    Ok(TransitionSystem {
        ctx,
        state_vars,
        primed,
        inputs,
        init: init_t,
        trans: trans_t,
        prop: prop_t,
    })
}

fn collect_trans_symbols(
    ctx: &Ctx,
    e: &SExpr,
    state_vars: &[Var],
    inputs: &mut Vec<Var>,
) -> Result<()> {
    match e {
        SExpr::Atom(s, p) => {
            if s == "true" || s == "false" || is_numeric(s) || is_operator(s) {
                return Ok(());
            }
            if let Some(base) = s.strip_suffix('\'') {
                match ctx.lookup_var(base) {
                    Some(v) if state_vars.contains(&v) => Ok(()),
                    _ => Err(p.err(format!("primed symbol `{s}` has no state variable `{base}`"))),
                }
            } else {
                if ctx.lookup_var(s).is_none() {
                    let v = ctx.declare_var(s, Sort::Real)?;
                    inputs.push(v);
                }
                Ok(())
            }
        }
        SExpr::List(items, _) => {
            for (i, item) in items.iter().enumerate() {
                if i == 0 && matches!(item, SExpr::Atom(s, _) if is_operator(s)) {
                    continue;
                }
                collect_trans_symbols(ctx, item, state_vars, inputs)?;
            }
            Ok(())
        }
    }
}

fn is_operator(s: &str) -> bool {
    matches!(
        s,
        "and" | "or" | "not" | "+" | "-" | "*" | "/" | "<" | "<=" | "=" | ">=" | ">"
    )
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

fn print_monomial(ctx: &Ctx, c: &Int, m: &std::collections::BTreeMap<Var, u32>) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !c.is_one() || m.is_empty() {
        factors.push(c.to_string());
    }
    for (v, p) in m {
        for _ in 0..*p {
            factors.push(ctx.var_name(*v));
        }
    }
    match factors.len() {
        0 => "1".to_string(),
        1 => factors.pop().unwrap(),
        _ => format!("(* {})", factors.join(" ")),
    }
}

/// Polynomial as an SMT-LIB term.
pub fn print_poly(ctx: &Ctx, f: &Polynomial) -> String {
    let monos = f.to_monomials();
    match monos.len() {
        0 => "0".to_string(),
        1 => print_monomial(ctx, &monos[0].0, &monos[0].1),
        _ => {
            let parts: Vec<String> = monos
                .iter()
                .map(|(c, m)| print_monomial(ctx, c, m))
                .collect();
            format!("(+ {})", parts.join(" "))
        }
    }
}

/// Atom `f rel 0` printed with the constant moved to the right-hand side.
fn print_poly_atom(ctx: &Ctx, f: &Polynomial, rel: Rel) -> String {
    let monos = f.to_monomials();
    let mut constant = Int::zero();
    let mut rest = Vec::new();
    for (c, m) in monos {
        if m.is_empty() {
            constant = c;
        } else {
            rest.push((c, m));
        }
    }
    let lhs = match rest.len() {
        0 => constant.to_string(),
        1 => print_monomial(ctx, &rest[0].0, &rest[0].1),
        _ => {
            let parts: Vec<String> = rest
                .iter()
                .map(|(c, m)| print_monomial(ctx, c, m))
                .collect();
            format!("(+ {})", parts.join(" "))
        }
    };
    if rest.is_empty() {
        return format!("({} {} 0)", rel.symbol(), lhs);
    }
    format!("({} {} {})", rel.symbol(), lhs, -constant)
}

/// Term in SMT-LIB syntax; `parse(print(t))` is `t` for parseable terms.
pub fn print_term(ctx: &Ctx, t: TermId) -> String {
    match ctx.term(t) {
        TermKind::True => "true".into(),
        TermKind::False => "false".into(),
        TermKind::BoolVar(v) => ctx.var_name(v),
        TermKind::PolyAtom { poly, rel } => print_poly_atom(ctx, &poly, rel),
        TermKind::ExtendedAtom { var, rel, poly, k } => format!(
            "({} {} (root-of {} {}))",
            rel.symbol(),
            ctx.var_name(var),
            print_poly(ctx, &poly),
            k
        ),
        TermKind::Not(s) => format!("(not {})", print_term(ctx, s)),
        TermKind::And(ts) => {
            let parts: Vec<String> = ts.iter().map(|s| print_term(ctx, *s)).collect();
            format!("(and {})", parts.join(" "))
        }
        TermKind::Or(ts) => {
            let parts: Vec<String> = ts.iter().map(|s| print_term(ctx, *s)).collect();
            format!("(or {})", parts.join(" "))
        }
    }
}

pub fn print_clause(ctx: &Ctx, c: &Clause) -> String {
    print_term(ctx, ctx.clause_term(c))
}

fn print_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("(/ {} {})", q.numer(), q.denom())
    }
}

/// Value in model output. Algebraic values print as
/// `(root-of <poly> <k>)` with a decimal approximation comment.
pub fn print_value(var_name: &str, value: &Value) -> String {
    match value {
        Value::Bool(b) => b.to_string(),
        Value::Real(AlgebraicNumber::Rational(q)) => print_rat(q),
        Value::Real(a @ AlgebraicNumber::Root { poly, .. }) => {
            let k = realalg::root_index(a).unwrap_or(0);
            let terms: Vec<String> = poly
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => c.to_string(),
                    _ => {
                        let mut fs = vec![];
                        if !c.is_one() {
                            fs.push(c.to_string());
                        }
                        for _ in 0..i {
                            fs.push(var_name.to_string());
                        }
                        if fs.len() == 1 {
                            fs.pop().unwrap()
                        } else {
                            format!("(* {})", fs.join(" "))
                        }
                    }
                })
                .collect();
            let p = if terms.len() == 1 {
                terms[0].clone()
            } else {
                format!("(+ {})", terms.join(" "))
            };
            format!("(root-of {} {}) ; ~{:.5}", p, k, a.approx_f64())
        }
    }
}

/// Multi-line model listing.
pub fn print_model(ctx: &Ctx, m: &Assignment) -> String {
    let mut out = String::from("(model");
    for (v, val) in m.iter() {
        out.push_str("\n  (");
        out.push_str(&ctx.var_name(*v));
        out.push(' ');
        out.push_str(&print_value(&ctx.var_name(*v), val));
        out.push(')');
    }
    out.push_str("\n)");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_script() {
        let s = parse_script("(declare-const x Real)(assert (< (* x x) 2))(check-sat)").unwrap();
        assert_eq!(s.commands.len(), 2);
        assert!(matches!(s.commands[0], Command::Assert(_)));
        assert!(matches!(s.commands[1], Command::CheckSat));
    }

    #[test]
    fn parse_assuming_model() {
        let s = parse_script(
            "(declare-const b Bool)(declare-const x Real)(declare-const y Real)\
             (assert b)(assert (or (not b) (< (+ (* x x) (* y y)) 2)))\
             (check-sat-assuming-model (x 2))",
        )
        .unwrap();
        match &s.commands[2] {
            Command::CheckSatAssumingModel(m) => {
                assert_eq!(m.len(), 1);
                assert_eq!(m[0].1, Rat::from(Int::from(2)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sort_error() {
        let err = parse_script("(declare-const x Real)(assert (< x true))").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn undeclared_symbol() {
        let err = parse_script("(assert (< x 1))").unwrap_err();
        assert!(err.to_string().contains("undeclared"));
    }

    #[test]
    fn parse_counter_system() {
        let sys = parse_system(
            "(define-system :state ((x Real)) :init (= x 0) \
             :trans (= x' (+ x 1)) :prop (< (* x x) 4))",
        )
        .unwrap();
        assert_eq!(sys.state_vars.len(), 1);
        assert!(sys.inputs.is_empty());
    }

    #[test]
    fn parse_cauchy_system() {
        let sys = parse_system(
            "(define-system :state ((S1 Real) (S2 Real) (S3 Real)) \
             :init (and (= S1 0) (= S2 0) (= S3 0)) \
             :trans (and (= S1' (+ S1 (* x y))) (= S2' (+ S2 (* x x))) (= S3' (+ S3 (* y y)))) \
             :prop (<= (* S1 S1) (* S2 S3)))",
        )
        .unwrap();
        assert_eq!(sys.state_vars.len(), 3);
        assert_eq!(sys.inputs.len(), 2);
    }

    #[test]
    fn prime_mismatch_is_error() {
        let err = parse_system(
            "(define-system :state ((x Real)) :init (= x 0) \
             :trans (= z' x) :prop (> x 0))",
        )
        .unwrap_err();
        assert!(err.to_string().contains("z'"), "{err}");
    }

    #[test]
    fn print_parse_roundtrip() {
        let script = parse_script(
            "(declare-const x Real)(declare-const y Real)(declare-const b Bool)\
             (assert (and b (or (not b) (< (+ (* x x) (* y y)) 2)) (>= (* 3 x y) (/ 1 2))))",
        )
        .unwrap();
        let Command::Assert(t) = script.commands[0] else {
            panic!()
        };
        let printed = print_term(&script.ctx, t);
        let reparsed = parse_term(
            &script.ctx,
            &parse_all(&printed).unwrap().first().unwrap().clone(),
        )
        .unwrap();
        assert_eq!(t, reparsed, "round trip failed via {printed}");
    }

    #[test]
    fn print_root_of_value() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let o = ctx.order();
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .sub(&o, &Polynomial::constant_i64(2));
        let roots = realalg::isolate_real_roots(&o, &f).unwrap();
        let s = print_value("x", &Value::Real(roots[1].clone()));
        assert!(s.starts_with("(root-of (+ -2 (* x x)) 2)"), "{s}");
        assert!(s.contains("~1.414"), "{s}");
    }
}
