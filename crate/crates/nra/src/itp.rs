//! Two-solver interpolation: models of one side are refuted by model
//! interpolants from the other until either side closes, plus elimination of
//! extended literals from interpolants.
//!
//! The variable order is re-fixed per query with the shared variables
//! lowest, so the interpolation frontier of the final analysis is exactly
//! the shared vocabulary and cell projections bottom out in shared space.

use crate::cad;
use crate::error::{Error, Result};
use crate::mcsat::{CheckResult, Solver, SolverStats};
use crate::model::{
    self, Assignment, Clause, Ctx, TermId, TermKind, TruthValue,
};
use crate::poly::{Sort, Var, VarOrder};
use std::collections::{HashMap, HashSet};

/// One refutation step: the restricted model of the second formula and the
/// model interpolant (already in basic constraints) that refutes it.
#[derive(Debug, Clone)]
pub struct InterpolantLog {
    pub steps: Vec<(Assignment, Clause)>,
    pub iterations: u64,
}

#[derive(Debug, Clone)]
pub enum InterpolationStatus {
    /// Conjunction of model-interpolant clauses over the shared vocabulary.
    Unsat(Vec<Clause>),
    Sat(Assignment),
}

#[derive(Debug, Clone)]
pub struct InterpolationResult {
    pub status: InterpolationStatus,
    pub shared: Vec<Var>,
    pub log: InterpolantLog,
    pub stats_a: SolverStats,
    pub stats_b: SolverStats,
}

impl InterpolationResult {
    pub fn interpolant(&self) -> Option<&[Clause]> {
        match &self.status {
            InterpolationStatus::Unsat(cs) => Some(cs),
            _ => None,
        }
    }

    pub fn model(&self) -> Option<&Assignment> {
        match &self.status {
            InterpolationStatus::Sat(m) => Some(m),
            _ => None,
        }
    }
}

/// Replaces every extended literal of a model interpolant with the negated
/// basic cell of its polynomial around the refuted model. Every literal of
/// the input must evaluate to false under the model.
pub fn eliminate_extended(ctx: &Ctx, clause: &Clause, m: &Assignment) -> Result<Clause> {
    for l in clause.lits() {
        if model::evaluate_lit(ctx, *l, m) != TruthValue::False {
            return Err(Error::Precondition(
                "eliminate_extended: literal is not false under the model".into(),
            ));
        }
    }
    let out = cad::replace_extended_literals(ctx, clause, m)?;
    debug_assert!(out
        .lits()
        .iter()
        .all(|l| !matches!(ctx.term(l.atom), TermKind::ExtendedAtom { .. })));
    debug_assert!(out
        .lits()
        .iter()
        .all(|l| model::evaluate_lit(ctx, *l, m) == TruthValue::False));
    Ok(out)
}

fn shared_vars(ctx: &Ctx, a: TermId, b: TermId) -> Vec<Var> {
    let va = ctx.term_vars(a);
    let vb: HashSet<Var> = ctx.term_vars(b).iter().copied().collect();
    va.iter().copied().filter(|v| vb.contains(v)).collect()
}

/// Fresh context with the same variables reordered: shared Reals lowest (in
/// their original relative order), then the rest.
fn reordered_ctx(ctx: &Ctx, shared: &[Var]) -> Ctx {
    let order = ctx.order();
    let shared_set: HashSet<Var> = shared
        .iter()
        .copied()
        .filter(|v| ctx.var_sort(*v) == Sort::Real)
        .collect();
    let mut vars: Vec<Var> = order
        .vars()
        .iter()
        .copied()
        .filter(|v| shared_set.contains(v))
        .collect();
    vars.extend(order.vars().iter().copied().filter(|v| !shared_set.contains(v)));
    ctx.clone_with_order(VarOrder::from_vars(vars))
}

fn translate_clause(from: &Ctx, to: &Ctx, c: &Clause) -> Result<Clause> {
    let empty = HashMap::new();
    let mut out = Clause::empty();
    for l in c.lits() {
        let t = model::map_term(from, to, l.atom, &empty)?;
        let lit = to.lit_of(t);
        out.push(if l.pos { lit } else { lit.negated() });
    }
    Ok(out)
}

const MAX_REFUTATIONS: u64 = 10_000;

/// Checks satisfiability of `a /\ b` and interpolates: models of `b` are
/// enumerated and refuted with model interpolants from `a`; the conjunction
/// of the refutations is the interpolant.
pub fn interpolate(ctx: &Ctx, a: TermId, b: TermId) -> Result<InterpolationResult> {
    let shared = shared_vars(ctx, a, b);
    let ictx = reordered_ctx(ctx, &shared);
    let empty = HashMap::new();
    let a2 = model::map_term(ctx, &ictx, a, &empty)?;
    let b2 = model::map_term(ctx, &ictx, b, &empty)?;
    let mut sa = Solver::new(ictx.clone());
    sa.assert_formula(a2);
    let mut sb = Solver::new(ictx.clone());
    sb.assert_formula(b2);

    let shared_set: HashSet<Var> = shared.iter().copied().collect();
    let mut clauses: Vec<Clause> = Vec::new();
    let mut log = InterpolantLog {
        steps: vec![],
        iterations: 0,
    };
    loop {
        log.iterations += 1;
        if log.iterations > MAX_REFUTATIONS {
            return Err(Error::IterationLimit(
                "interpolation refutation loop".into(),
            ));
        }
        match sb.check()? {
            CheckResult::Unsat(_) => {
                let out: Result<Vec<Clause>> = clauses
                    .iter()
                    .map(|c| translate_clause(&ictx, ctx, c))
                    .collect();
                let steps: Result<Vec<(Assignment, Clause)>> = log
                    .steps
                    .iter()
                    .map(|(m, c)| Ok((m.clone(), translate_clause(&ictx, ctx, c)?)))
                    .collect();
                return Ok(InterpolationResult {
                    status: InterpolationStatus::Unsat(out?),
                    shared,
                    log: InterpolantLog {
                        steps: steps?,
                        iterations: log.iterations,
                    },
                    stats_a: sa.stats(),
                    stats_b: sb.stats(),
                });
            }
            CheckResult::Sat(mb) => {
                let m = mb.restrict(&shared_set);
                match sa.check_modulo(&m)? {
                    CheckResult::Sat(ma) => {
                        let combined = ma
                            .union(&mb)
                            .expect("models agree on the shared vocabulary");
                        return Ok(InterpolationResult {
                            status: InterpolationStatus::Sat(combined),
                            shared,
                            log,
                            stats_a: sa.stats(),
                            stats_b: sb.stats(),
                        });
                    }
                    CheckResult::Unsat(i) => {
                        let basic = eliminate_extended(&ictx, &i, &m)?;
                        log.steps.push((m, basic.clone()));
                        if !clauses.iter().any(|c| c.same_lits(&basic)) {
                            clauses.push(basic.clone());
                        }
                        sb.assert_clause(&basic);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Rel, Value};
    use crate::poly::Polynomial;
    use crate::realalg::AlgebraicNumber;

    fn c(n: i64) -> Polynomial {
        Polynomial::constant_i64(n)
    }

    fn check_unsat(ctx: &Ctx, f: TermId) -> bool {
        let mut s = Solver::new(ctx.clone());
        s.assert_formula(f);
        !s.check().unwrap().is_sat()
    }

    fn interpolant_term(ctx: &Ctx, clauses: &[Clause]) -> TermId {
        let ts = clauses.iter().map(|c| ctx.clause_term(c)).collect();
        ctx.mk_and(ts)
    }

    #[test]
    fn paper_shape_interpolation() {
        let ctx = Ctx::new();
        let b = ctx.declare_var("b", Sort::Bool).unwrap();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let circle = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let bt = ctx.mk_bool_var(b).unwrap();
        let a = ctx.mk_and(vec![
            bt,
            ctx.mk_or(vec![ctx.mk_not(bt), ctx.mk_poly_atom(circle, Rel::Lt)]),
        ]);
        let bf = ctx.mk_poly_atom(Polynomial::var(x).sub(&o, &c(2)), Rel::Ge);
        let r = interpolate(&ctx, a, bf).unwrap();
        let clauses = r.interpolant().expect("unsat").to_vec();
        assert!(!clauses.is_empty());
        // self-oracle: A /\ ¬I unsat and I /\ B unsat
        let i = interpolant_term(&ctx, &clauses);
        assert!(check_unsat(&ctx, ctx.mk_and(vec![a, ctx.mk_not(i)])));
        assert!(check_unsat(&ctx, ctx.mk_and(vec![i, bf])));
        // vocabulary over shared vars only
        for cl in &clauses {
            for l in cl.lits() {
                for v in ctx.term_vars(l.atom).iter() {
                    assert!(r.shared.contains(v));
                }
            }
        }
        // no extended literals survive
        for cl in &clauses {
            for l in cl.lits() {
                assert!(!matches!(
                    ctx.term(l.atom),
                    TermKind::ExtendedAtom { .. }
                ));
            }
        }
    }

    #[test]
    fn b_false_short_circuits() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let a = ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt);
        let b = ctx.mk_false();
        let r = interpolate(&ctx, a, b).unwrap();
        assert!(matches!(&r.status, InterpolationStatus::Unsat(cs) if cs.is_empty()));
    }

    #[test]
    fn sat_combined_model() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let o = ctx.order();
        let a = ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt);
        let b = ctx.mk_poly_atom(Polynomial::var(x).sub(&o, &c(1)), Rel::Gt);
        let r = interpolate(&ctx, a, b).unwrap();
        let m = r.model().expect("sat expected");
        assert_eq!(model::evaluate(&ctx, a, m), TruthValue::True);
        assert_eq!(model::evaluate(&ctx, b, m), TruthValue::True);
    }

    #[test]
    fn eliminate_extended_example() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let o = ctx.order();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let e = ctx.mk_extended(x, Rel::Gt, xsq.clone(), 2).unwrap();
        let i = Clause::new(vec![ctx.lit_of(e).negated()]);
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(2)));
        let out = eliminate_extended(&ctx, &i, &m).unwrap();
        let expect = Clause::new(vec![
            ctx.lit_of(ctx.mk_poly_atom(xsq, Rel::Gt)).negated(),
            ctx.lit_of(ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt))
                .negated(),
        ]);
        assert!(out.same_lits(&expect));

        // identity on clauses without extended literals
        let out2 = eliminate_extended(&ctx, &out, &m).unwrap();
        assert!(out2.same_lits(&out));

        // literal not false under the model is an error
        let mut m2 = Assignment::new();
        m2.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        assert!(eliminate_extended(&ctx, &i, &m2).is_err());
    }

    #[test]
    fn two_extended_literals() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let ylin = Polynomial::var(y).sub(&o, &c(3));
        let e1 = ctx.mk_extended(x, Rel::Gt, xsq, 2).unwrap();
        let e2 = ctx.mk_extended(y, Rel::Lt, ylin, 1).unwrap();
        // ¬e1 and e2 are both false at (2, 5)
        let i = Clause::new(vec![ctx.lit_of(e1).negated(), ctx.lit_of(e2)]);
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(2)));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(5)));
        let out = eliminate_extended(&ctx, &i, &m).unwrap();
        for l in out.lits() {
            assert!(!matches!(ctx.term(l.atom), TermKind::ExtendedAtom { .. }));
            assert_eq!(model::evaluate_lit(&ctx, *l, &m), TruthValue::False);
        }
    }
}
