//! Model generalization: implicant extraction by top-down traversal plus
//! CAD-cell projection onto the kept variables.

use crate::cad;
use crate::error::{Error, Result};
use crate::model::{self, Assignment, Ctx, Lit, TermId, TermKind, TruthValue};
use crate::poly::{Polynomial, Sort, Var};
use std::collections::HashSet;

/// A conjunction of literals, true in the generating model, that implies
/// the source formula. Disjunctions take their first true child.
pub fn implicant(ctx: &Ctx, f: TermId, m: &Assignment) -> Result<Vec<Lit>> {
    if model::evaluate(ctx, f, m) != TruthValue::True {
        return Err(Error::Precondition(
            "implicant requires the formula to be true in the model".into(),
        ));
    }
    let mut out: Vec<Lit> = Vec::new();
    collect(ctx, f, true, m, &mut out);
    Ok(out)
}

fn collect(ctx: &Ctx, t: TermId, pos: bool, m: &Assignment, out: &mut Vec<Lit>) {
    match ctx.term(t) {
        TermKind::True | TermKind::False => {}
        TermKind::BoolVar(_) | TermKind::PolyAtom { .. } | TermKind::ExtendedAtom { .. } => {
            let l = Lit::new(t, pos);
            if !out.contains(&l) {
                out.push(l);
            }
        }
        TermKind::Not(s) => collect(ctx, s, !pos, m, out),
        TermKind::And(ts) => {
            if pos {
                for s in ts {
                    collect(ctx, s, true, m, out);
                }
            } else {
                // ¬(and ...) behaves as a disjunction: first false child.
                for s in ts {
                    if model::evaluate(ctx, s, m) == TruthValue::False {
                        collect(ctx, s, false, m, out);
                        return;
                    }
                }
                unreachable!("negated conjunction true in the model has a false child");
            }
        }
        TermKind::Or(ts) => {
            if pos {
                for s in ts {
                    if model::evaluate(ctx, s, m) == TruthValue::True {
                        collect(ctx, s, true, m, out);
                        return;
                    }
                }
                unreachable!("disjunction true in the model has a true child");
            } else {
                for s in ts {
                    collect(ctx, s, false, m, out);
                }
            }
        }
    }
}

/// Formula over the kept variables that is true in the model and guarantees
/// extension to a full solution of `f`: the kept levels of the basic cell of
/// the implicant's polynomials, conjoined with the kept Boolean literals.
///
/// The kept Real variables must sit below every dropped variable of the
/// implicant in the variable order.
pub fn generalize(ctx: &Ctx, f: TermId, m: &Assignment, keep: &HashSet<Var>) -> Result<TermId> {
    let imp = implicant(ctx, f, m)?;
    let order = ctx.order();

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut bool_lits: Vec<Lit> = Vec::new();
    for l in &imp {
        match ctx.term(l.atom) {
            TermKind::PolyAtom { poly, .. } => {
                let n = poly.sign_normalized();
                if !polys.contains(&n) {
                    polys.push(n);
                }
            }
            TermKind::ExtendedAtom { poly, .. } => {
                let n = poly.sign_normalized();
                if !polys.contains(&n) {
                    polys.push(n);
                }
            }
            TermKind::BoolVar(v) => {
                if keep.contains(&v) {
                    bool_lits.push(*l);
                }
            }
            _ => {}
        }
    }

    // Kept Real variables must be lowest among the cell variables.
    let mut cell_vars: HashSet<Var> = HashSet::new();
    for p in &polys {
        cell_vars.extend(p.vars());
    }
    let kept_levels: Vec<usize> = cell_vars
        .iter()
        .filter(|v| keep.contains(v))
        .map(|v| order.level(*v))
        .collect();
    let dropped_levels: Vec<usize> = cell_vars
        .iter()
        .filter(|v| !keep.contains(v))
        .map(|v| order.level(*v))
        .collect();
    if let (Some(maxk), Some(mind)) = (
        kept_levels.iter().max(),
        dropped_levels.iter().min(),
    ) {
        if maxk >= mind {
            return Err(Error::VarOrder(
                "kept variables must be below every dropped variable".into(),
            ));
        }
    }

    let mut conj: Vec<TermId> = Vec::new();
    if !polys.is_empty() {
        let cell = cad::cell_basic(ctx, &polys, m)?;
        let keep_real: HashSet<Var> = keep
            .iter()
            .copied()
            .filter(|v| ctx.var_sort(*v) == Sort::Real)
            .collect();
        conj.extend(cell.atoms_for(&keep_real));
    }
    conj.extend(bool_lits.iter().map(|l| ctx.lit_term(*l)));
    let g = ctx.mk_and(conj);
    debug_assert_eq!(
        model::evaluate(ctx, g, m),
        TruthValue::True,
        "generalization must hold in its own model"
    );
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Rel, Value};
    use crate::realalg::AlgebraicNumber;

    fn c(n: i64) -> Polynomial {
        Polynomial::constant_i64(n)
    }

    fn b(ctx: &Ctx, name: &str) -> TermId {
        let v = ctx
            .lookup_var(name)
            .unwrap_or_else(|| ctx.declare_var(name, Sort::Bool).unwrap());
        ctx.mk_bool_var(v).unwrap()
    }

    #[test]
    fn implicant_examples() {
        let ctx = Ctx::new();
        let ba = b(&ctx, "a");
        let bb = b(&ctx, "bb");
        let f = ctx.mk_or(vec![ba, bb]);
        let mut m = Assignment::new();
        m.insert(ctx.lookup_var("a").unwrap(), Value::Bool(true));
        m.insert(ctx.lookup_var("bb").unwrap(), Value::Bool(false));
        let imp = implicant(&ctx, f, &m).unwrap();
        assert_eq!(imp, vec![ctx.lit_of(ba)]);

        // (x>0) and ((y>0) or (y<1)) at x=1, y=0 takes (x>0), (y<1)
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let xg = ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt);
        let yg = ctx.mk_poly_atom(Polynomial::var(y), Rel::Gt);
        let yl = ctx.mk_poly_atom(Polynomial::var(y).sub(&o, &c(1)), Rel::Lt);
        let f = ctx.mk_and(vec![xg, ctx.mk_or(vec![yg, yl])]);
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(1)));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(0)));
        let imp = implicant(&ctx, f, &m).unwrap();
        assert_eq!(imp, vec![ctx.lit_of(xg), ctx.lit_of(yl)]);

        // single true atom is its own implicant
        let imp = implicant(&ctx, xg, &m).unwrap();
        assert_eq!(imp, vec![ctx.lit_of(xg)]);

        // formula not true in the model is an error
        let mut m2 = Assignment::new();
        m2.insert(x, Value::Real(AlgebraicNumber::from_int(-1)));
        m2.insert(y, Value::Real(AlgebraicNumber::from_int(0)));
        assert!(implicant(&ctx, f, &m2).is_err());
    }

    #[test]
    fn generalize_circle_example() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let circle = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let f = ctx.mk_poly_atom(circle, Rel::Gt);
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(1)));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(2)));
        let keep: HashSet<Var> = [x].into_iter().collect();
        let g = generalize(&ctx, f, &m, &keep).unwrap();
        // (x^2 < 2) and (x > 0)
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let expect = ctx.mk_and(vec![
            ctx.mk_poly_atom(xsq, Rel::Lt),
            ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt),
        ]);
        assert_eq!(g, expect);
    }

    #[test]
    fn generalize_keep_all() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let f = ctx.mk_poly_atom(
            Polynomial::var(y).sub(&o, &Polynomial::var(x)),
            Rel::Gt,
        );
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(1)));
        let keep: HashSet<Var> = [x, y].into_iter().collect();
        let g = generalize(&ctx, f, &m, &keep).unwrap();
        assert_eq!(model::evaluate(&ctx, g, &m), TruthValue::True);

        // keeping only x gives a level-x condition true at 0
        let keep: HashSet<Var> = [x].into_iter().collect();
        let g = generalize(&ctx, f, &m, &keep).unwrap();
        assert_eq!(model::evaluate(&ctx, g, &m), TruthValue::True);
        for v in ctx.term_vars(g).iter() {
            assert_eq!(*v, x);
        }
    }

    #[test]
    fn generalize_order_violation() {
        let ctx = Ctx::new();
        let x = ctx.declare_var("x", Sort::Real).unwrap();
        let y = ctx.declare_var("y", Sort::Real).unwrap();
        let o = ctx.order();
        let f = ctx.mk_poly_atom(
            Polynomial::var(y).sub(&o, &Polynomial::var(x)),
            Rel::Gt,
        );
        let mut m = Assignment::new();
        m.insert(x, Value::Real(AlgebraicNumber::from_int(0)));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(1)));
        // keeping y (the higher variable) while dropping x is rejected
        let keep: HashSet<Var> = [y].into_iter().collect();
        assert!(generalize(&ctx, f, &m, &keep).is_err());
    }
}
