//! Explanation of arithmetic unit conflicts: the negated responsible
//! constraints plus negated cell bounds over the assigned variables,
//! excluding the current point.

use super::feasible::{self, FeasibleSet};
use super::trail::Trail;
use crate::cad;
use crate::error::{Error, Result};
use crate::model::{Clause, Ctx, Lit, TermId, TermKind};
use crate::poly::{Polynomial, Var};
use crate::realalg::RealPoint;

/// Feasible set of `x` under one assigned arithmetic atom that is unit over
/// `x` in the trail.
pub fn atom_feasible(
    ctx: &Ctx,
    trail: &Trail,
    atom: TermId,
    value: bool,
    x: Var,
) -> Result<FeasibleSet> {
    let order = ctx.order();
    match ctx.term(atom) {
        TermKind::PolyAtom { poly, rel } => {
            let point = lower_point(trail, &poly, x)?;
            feasible::poly_constraint_feasible(&order, &poly, rel, value, &point, x)
        }
        TermKind::ExtendedAtom { var, rel, poly, k } => {
            if var != x {
                return Err(Error::Precondition(
                    "extended constraint unit over a non-root variable is unsupported".into(),
                ));
            }
            let point = lower_point(trail, &poly, x)?;
            feasible::extended_constraint_feasible(&order, &poly, rel, k, value, &point, x)
        }
        _ => Err(Error::Precondition("not an arithmetic atom".into())),
    }
}

fn lower_point(trail: &Trail, poly: &Polynomial, x: Var) -> Result<RealPoint> {
    let vars = poly.vars().into_iter().filter(|v| *v != x);
    trail.assignment().real_point_for(vars)
}

/// Builds the conflict clause for a variable whose feasible set is empty:
/// `¬L_1 ∨ … ∨ ¬L_m ∨ ¬D_1 ∨ … ∨ ¬D_j` where the `L_i` are a minimal
/// prefix of the unit constraints and the `D_j` describe the CAD cell of
/// their one-step projection around the current assignment.
pub fn explain_unit_conflict(
    ctx: &Ctx,
    trail: &Trail,
    x: Var,
    units: &[(TermId, bool)],
) -> Result<Clause> {
    let order = ctx.order();
    // Minimal responsible prefix in trail order.
    let mut acc = FeasibleSet::full();
    let mut used: Vec<(TermId, bool)> = Vec::new();
    for (t, b) in units {
        acc = acc.intersect(&atom_feasible(ctx, trail, *t, *b, x)?);
        used.push((*t, *b));
        if acc.is_empty() {
            break;
        }
    }
    assert!(acc.is_empty(), "explain called without an empty feasible set");

    let mut polys: Vec<Polynomial> = Vec::new();
    for (t, _) in &used {
        let f = match ctx.term(*t) {
            TermKind::PolyAtom { poly, .. } => poly,
            TermKind::ExtendedAtom { poly, .. } => poly,
            _ => unreachable!(),
        };
        let n = f.sign_normalized();
        if !polys.contains(&n) {
            polys.push(n);
        }
    }

    let mut clause = Clause::empty();
    for (t, b) in &used {
        clause.push(Lit::new(*t, !b));
    }
    let lower = cad::project_step(&order, &polys, x, cad::ProjectionKind::default());
    let lower: Vec<Polynomial> = lower.into_iter().filter(|f| !f.is_constant()).collect();
    if !lower.is_empty() {
        let cell = cad::cell_extended(ctx, &lower, trail.assignment())?;
        for a in cell.all_atoms() {
            clause.push(ctx.lit_of(a).negated());
        }
    }
    debug_assert!(
        clause.lits().iter().all(|l| trail.can_evaluate(*l, false)),
        "conflict clause literal does not evaluate to false"
    );
    Ok(clause)
}
