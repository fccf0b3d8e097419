//! CAD projection closure and model-driven single-cell construction.
//!
//! A single cell of the induced decomposition is built bottom-up around a
//! sample point, without constructing the full decomposition: at each level
//! the roots of the closure polynomials are isolated under the values of the
//! lower levels and the one or two bounds adjacent to the sample are emitted
//! as extended constraints. Reduction to basic constraints replaces each
//! bound by the sign conditions of the bounding polynomial and its
//! derivatives at the sample. Delineability is not checked explicitly; it is
//! inherited from projection closure.

use crate::error::{Error, Result};
use crate::model::{Assignment, Ctx, Rel, TermId, TruthValue};
use crate::poly::{self, Polynomial, Var, VarOrder};
use crate::realalg::{self, AlgebraicNumber, RealPoint, RootsAt};
use std::cmp::Ordering;
use std::collections::HashSet;

/// Projection operator selection. McCallum-style (leading coefficients,
/// discriminants, pairwise resultants, with the further-coefficients
/// safeguard) is the default; the conservative fallback additionally closes
/// under all coefficients and principal subresultant coefficient chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProjectionKind {
    #[default]
    McCallum,
    Conservative,
}

/// Finite set of polynomials closed under the projection operator down the
/// variable order.
#[derive(Debug, Clone)]
pub struct ProjectionClosure {
    polys: Vec<Polynomial>,
}

impl ProjectionClosure {
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn at_level(&self, v: Var) -> Vec<&Polynomial> {
        self.polys
            .iter()
            .filter(|f| f.top_var() == Some(v))
            .collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        let n = f.sign_normalized();
        self.polys.contains(&n)
    }

    /// Closure under derivatives in each polynomial's top variable, the
    /// finite atom universe for interpolant convergence.
    pub fn derivative_closure(&self, order: &VarOrder) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for f in &self.polys {
            let mut g = f.clone();
            loop {
                let n = g.sign_normalized();
                if !n.is_constant() && !out.contains(&n) {
                    out.push(n);
                }
                let Some(v) = g.top_var() else { break };
                g = g.derivative(order, v);
                if g.is_constant() {
                    break;
                }
            }
        }
        out
    }
}

fn push_normalized(set: &mut Vec<Polynomial>, order: &VarOrder, f: Polynomial) {
    if f.is_constant() {
        return;
    }
    let v = f.top_var().unwrap();
    // The content is a sign-carrying factor at a lower level; the level
    // itself keeps the square-free primitive part.
    let cont = poly::content_in(order, &f, v);
    let pp = if cont.is_constant() {
        f
    } else {
        push_normalized(set, order, cont.clone());
        poly::exact_div(order, &f, &cont)
    };
    let sf = poly::square_free_part(order, &pp, v).sign_normalized();
    if sf.is_constant() {
        return;
    }
    if !set.contains(&sf) {
        set.push(sf);
    }
}

/// Closure of `polys` under the projection operator.
pub fn project(order: &VarOrder, polys: &[Polynomial], kind: ProjectionKind) -> ProjectionClosure {
    let mut set: Vec<Polynomial> = Vec::new();
    for f in polys {
        push_normalized(&mut set, order, f.clone());
    }
    // Additions always live at strictly lower levels, so one sweep from the
    // highest level down closes the set.
    let mut levels: Vec<Var> = order.vars().to_vec();
    levels.reverse();
    for v in levels {
        let group: Vec<Polynomial> = set
            .iter()
            .filter(|f| f.top_var() == Some(v))
            .cloned()
            .collect();
        if group.is_empty() {
            continue;
        }
        for a in project_step(order, &group, v, kind) {
            push_normalized(&mut set, order, a);
        }
    }
    ProjectionClosure { polys: set }
}

/// One projection step: the polynomials, free of `x`, whose sign-invariance
/// keeps the root structure of `polys` in `x` stable: coefficient chains,
/// discriminants, and pairwise resultants with respect to `x`.
pub fn project_step(
    order: &VarOrder,
    polys: &[Polynomial],
    x: Var,
    kind: ProjectionKind,
) -> Vec<Polynomial> {
    let group: Vec<&Polynomial> = polys.iter().filter(|f| f.degree_in(x) >= 1).collect();
    let mut additions: Vec<Polynomial> = Vec::new();
    for f in &group {
        // Leading coefficient, plus further coefficients while the ones
        // seen so far can vanish; the conservative operator adds them all.
        let coeffs = f.coeffs_in(order, x);
        for c in coeffs.iter().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_constant() {
                break;
            }
            additions.push(c.clone());
        }
        if f.degree_in(x) >= 2 {
            if let Ok(d) = poly::discriminant(order, f, x) {
                additions.push(d);
            }
            if kind == ProjectionKind::Conservative {
                let fp = f.derivative(order, x);
                for p in poly::subresultant_psc(order, f, &fp, x) {
                    additions.push(p);
                }
            }
        }
    }
    for i in 0..group.len() {
        for j in i + 1..group.len() {
            if let Ok(r) = poly::resultant(order, group[i], group[j], x) {
                additions.push(r);
            }
            if kind == ProjectionKind::Conservative {
                for p in poly::subresultant_psc(order, group[i], group[j], x) {
                    additions.push(p);
                }
            }
        }
    }
    additions
}

/// One level of a cell description: a conjunction of atoms constraining
/// `var` in terms of strictly lower variables. An empty conjunction is the
/// trivial level.
#[derive(Debug, Clone)]
pub struct CellLevel {
    pub var: Var,
    pub atoms: Vec<TermId>,
}

/// Per-level description of a CAD cell around a sample point, cylindrical in
/// the variable order.
#[derive(Debug, Clone)]
pub struct CellDescription {
    pub levels: Vec<CellLevel>,
}

impl CellDescription {
    pub fn all_atoms(&self) -> Vec<TermId> {
        self.levels.iter().flat_map(|l| l.atoms.clone()).collect()
    }

    pub fn to_term(&self, ctx: &Ctx) -> TermId {
        ctx.mk_and(self.all_atoms())
    }

    /// Atoms of the levels belonging to the given variables.
    pub fn atoms_for(&self, keep: &HashSet<Var>) -> Vec<TermId> {
        self.levels
            .iter()
            .filter(|l| keep.contains(&l.var))
            .flat_map(|l| l.atoms.clone())
            .collect()
    }
}

fn real_point(asg: &Assignment, polys: &[Polynomial]) -> Result<RealPoint> {
    let mut vars: Vec<Var> = Vec::new();
    for f in polys {
        for v in f.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    asg.real_point_for(vars)
}

fn cell_vars(order: &VarOrder, polys: &[Polynomial]) -> Vec<Var> {
    let mut vars: Vec<Var> = Vec::new();
    for f in polys {
        for v in f.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort_by_key(|v| order.level(*v));
    vars
}

struct LevelBounds {
    /// (root value, polynomial, 1-based root index)
    equal: Option<(AlgebraicNumber, Polynomial, u32)>,
    lower: Option<(AlgebraicNumber, Polynomial, u32)>,
    upper: Option<(AlgebraicNumber, Polynomial, u32)>,
    /// Closure polynomials at this level that vanish identically under the
    /// lower assignment.
    vanishing: Vec<Polynomial>,
}

fn level_bounds(
    order: &VarOrder,
    closure: &ProjectionClosure,
    point: &RealPoint,
    v: Var,
) -> Result<LevelBounds> {
    let xv = point
        .get(&v)
        .ok_or_else(|| Error::IncompleteAssignment(format!("{v:?}")))?
        .clone();
    let mut out = LevelBounds {
        equal: None,
        lower: None,
        upper: None,
        vanishing: vec![],
    };
    for f in closure.at_level(v) {
        match realalg::roots_at(order, f, point, v)? {
            RootsAt::Vanishes => out.vanishing.push(f.clone()),
            RootsAt::NoRoots(_) => {}
            RootsAt::Roots(roots) => {
                for (i, r) in roots.into_iter().enumerate() {
                    let k = (i + 1) as u32;
                    match xv.compare(&r) {
                        Ordering::Equal => {
                            if out.equal.is_none() {
                                out.equal = Some((r, f.clone(), k));
                            }
                        }
                        Ordering::Greater => {
                            let better = match &out.lower {
                                None => true,
                                Some((cur, _, _)) => r.compare(cur) == Ordering::Greater,
                            };
                            if better {
                                out.lower = Some((r, f.clone(), k));
                            }
                        }
                        Ordering::Less => {
                            let better = match &out.upper {
                                None => true,
                                Some((cur, _, _)) => r.compare(cur) == Ordering::Less,
                            };
                            if better {
                                out.upper = Some((r, f.clone(), k));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The polynomial constraint matching the sign of `f` at the point.
pub fn sign_condition(ctx: &Ctx, f: &Polynomial, asg: &Assignment) -> Result<TermId> {
    let order = ctx.order();
    let pt = asg.real_point_for(f.vars())?;
    let s = realalg::sign_at(&order, f, &pt)?;
    Ok(ctx.mk_poly_atom(f.clone(), Rel::of_sign(s)))
}

fn check_containment(ctx: &Ctx, cell: &CellDescription, asg: &Assignment) {
    for atom in cell.all_atoms() {
        let v = crate::model::evaluate(ctx, atom, asg);
        assert_eq!(
            v,
            TruthValue::True,
            "cell atom does not hold at its own sample point"
        );
    }
}

/// Extended-constraint description of the CAD cell of `polys` containing the
/// sample `asg`.
pub fn cell_extended(
    ctx: &Ctx,
    polys: &[Polynomial],
    asg: &Assignment,
) -> Result<CellDescription> {
    cell_extended_with(ctx, polys, asg, ProjectionKind::default())
}

pub fn cell_extended_with(
    ctx: &Ctx,
    polys: &[Polynomial],
    asg: &Assignment,
    kind: ProjectionKind,
) -> Result<CellDescription> {
    let order = ctx.order();
    let closure = project(&order, polys, kind);
    let point = real_point(asg, polys)?;
    let mut levels = Vec::new();
    for v in cell_vars(&order, polys) {
        let b = level_bounds(&order, &closure, &point, v)?;
        let mut atoms = Vec::new();
        if let Some((_, f, k)) = b.equal {
            atoms.push(ctx.mk_extended(v, Rel::Eq, f, k)?);
        } else {
            if let Some((_, f, k)) = b.lower {
                atoms.push(ctx.mk_extended(v, Rel::Gt, f, k)?);
            }
            if let Some((_, f, k)) = b.upper {
                atoms.push(ctx.mk_extended(v, Rel::Lt, f, k)?);
            }
        }
        levels.push(CellLevel { var: v, atoms });
    }
    let cell = CellDescription { levels };
    check_containment(ctx, &cell, asg);
    Ok(cell)
}

/// Basic-constraint description of a subcell of `cell_extended` containing
/// the sample: each extended bound is replaced by sign conditions on the
/// bounding polynomial and its derivatives up to the effective degree, and
/// vanishing closure polynomials are recorded as equalities.
pub fn cell_basic(ctx: &Ctx, polys: &[Polynomial], asg: &Assignment) -> Result<CellDescription> {
    cell_basic_with(ctx, polys, asg, ProjectionKind::default())
}

pub fn cell_basic_with(
    ctx: &Ctx,
    polys: &[Polynomial],
    asg: &Assignment,
    kind: ProjectionKind,
) -> Result<CellDescription> {
    let order = ctx.order();
    let closure = project(&order, polys, kind);
    let point = real_point(asg, polys)?;
    let mut levels = Vec::new();
    for v in cell_vars(&order, polys) {
        let b = level_bounds(&order, &closure, &point, v)?;
        let mut atoms = Vec::new();
        for f in &b.vanishing {
            let a = sign_condition(ctx, f, asg)?;
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        let mut bound_polys: Vec<Polynomial> = Vec::new();
        if let Some((_, f, _)) = &b.equal {
            bound_polys.push(f.clone());
        } else {
            if let Some((_, f, _)) = &b.lower {
                bound_polys.push(f.clone());
            }
            if let Some((_, f, _)) = &b.upper {
                if !bound_polys.contains(f) {
                    bound_polys.push(f.clone());
                }
            }
        }
        for f in bound_polys {
            let eff = realalg::effective_degree(&order, &f, &point, v)?
                .expect("bounding polynomial cannot vanish");
            let mut d = f.clone();
            for _ in 0..eff {
                let a = sign_condition(ctx, &d, asg)?;
                if !atoms.contains(&a) {
                    atoms.push(a);
                }
                d = d.derivative(&order, v);
            }
        }
        levels.push(CellLevel { var: v, atoms });
    }
    let cell = CellDescription { levels };
    check_containment(ctx, &cell, asg);
    Ok(cell)
}

/// Replaces every extended literal whose polynomial is fully assigned at the
/// sample with the negated atoms of `cell_basic` of that polynomial around
/// the sample; other literals are kept verbatim. The replacement literals
/// are all false at the sample, and the basic cell implies the negation of
/// the replaced literal throughout.
pub fn replace_extended_literals(
    ctx: &Ctx,
    clause: &crate::model::Clause,
    asg: &Assignment,
) -> Result<crate::model::Clause> {
    let mut out = crate::model::Clause::empty();
    for l in clause.lits() {
        match ctx.term(l.atom) {
            crate::model::TermKind::ExtendedAtom { poly, .. } => {
                let assigned = poly.vars().iter().all(|v| asg.contains(*v));
                if !assigned {
                    out.push(*l);
                    continue;
                }
                let cell = cell_basic(ctx, &[poly], asg)?;
                for a in cell.all_atoms() {
                    out.push(ctx.lit_of(a).negated());
                }
            }
            _ => out.push(*l),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Value;
    use crate::poly::Sort;

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

    fn asg(vals: &[(Var, i64)]) -> Assignment {
        let mut m = Assignment::new();
        for (v, n) in vals {
            m.insert(*v, Value::Real(AlgebraicNumber::from_int(*n)));
        }
        m
    }

    #[test]
    fn project_examples() {
        let (ctx, x, y) = ctx_xy();
        let o = ctx.order();
        let f = circle(&ctx, x, y);
        let cl = project(&o, &[f.clone()], ProjectionKind::McCallum);
        assert!(cl.contains(&f));
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        assert!(cl.contains(&xsq), "closure misses the level-x image: {cl:?}");

        // univariate fixpoint
        let g = Polynomial::var(x).sub(&o, &c(1));
        let cl = project(&o, &[g.clone()], ProjectionKind::McCallum);
        assert_eq!(cl.polys().len(), 1);

        // set semantics
        let cl2 = project(&o, &[g.clone(), g.clone()], ProjectionKind::McCallum);
        assert_eq!(cl2.polys().len(), 1);
    }

    #[test]
    fn cell_extended_examples() {
        let (ctx, x, y) = ctx_xy();
        let f = circle(&ctx, x, y);
        let o = ctx.order();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));

        // M = (0, 3): level y one-sided, level x two-sided
        let cell = cell_extended(&ctx, &[f.clone()], &asg(&[(x, 0), (y, 3)])).unwrap();
        assert_eq!(cell.levels.len(), 2);
        let lx = &cell.levels[0];
        assert_eq!(lx.var, x);
        assert_eq!(lx.atoms.len(), 2);
        assert_eq!(
            ctx.term(lx.atoms[0]),
            crate::model::TermKind::ExtendedAtom {
                var: x,
                rel: Rel::Gt,
                poly: xsq.clone(),
                k: 1
            }
        );
        assert_eq!(
            ctx.term(lx.atoms[1]),
            crate::model::TermKind::ExtendedAtom {
                var: x,
                rel: Rel::Lt,
                poly: xsq.clone(),
                k: 2
            }
        );
        let ly = &cell.levels[1];
        assert_eq!(ly.atoms.len(), 1);
        assert_eq!(
            ctx.term(ly.atoms[0]),
            crate::model::TermKind::ExtendedAtom {
                var: y,
                rel: Rel::Gt,
                poly: f.clone(),
                k: 2
            }
        );

        // M = (3, 0): level y trivial, level x right region
        let cell = cell_extended(&ctx, &[f.clone()], &asg(&[(x, 3), (y, 0)])).unwrap();
        assert_eq!(cell.levels[1].atoms.len(), 0);
        assert_eq!(
            ctx.term(cell.levels[0].atoms[0]),
            crate::model::TermKind::ExtendedAtom {
                var: x,
                rel: Rel::Gt,
                poly: xsq,
                k: 2
            }
        );

        // single linear polynomial, right region
        let g = Polynomial::var(x).sub(&o, &c(1));
        let cell = cell_extended(&ctx, &[g.clone()], &asg(&[(x, 5)])).unwrap();
        assert_eq!(cell.levels.len(), 1);
        assert_eq!(
            ctx.term(cell.levels[0].atoms[0]),
            crate::model::TermKind::ExtendedAtom {
                var: x,
                rel: Rel::Gt,
                poly: g,
                k: 1
            }
        );
    }

    #[test]
    fn cell_basic_examples() {
        let (ctx, x, y) = ctx_xy();
        let o = ctx.order();
        let f = circle(&ctx, x, y);

        // C3 at (1, 2): (x^2<2) ∧ (x>0) ∧ (x^2+y^2>2) ∧ (y>0)
        let cell = cell_basic(&ctx, &[f.clone()], &asg(&[(x, 1), (y, 2)])).unwrap();
        let xsq = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let expect_x = vec![
            ctx.mk_poly_atom(xsq, Rel::Lt),
            ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt),
        ];
        let expect_y = vec![
            ctx.mk_poly_atom(f.clone(), Rel::Gt),
            ctx.mk_poly_atom(Polynomial::var(y), Rel::Gt),
        ];
        assert_eq!(cell.levels[0].atoms, expect_x);
        assert_eq!(cell.levels[1].atoms, expect_y);

        // Example with a single univariate polynomial at x = 2
        let g = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let cell = cell_basic(&ctx, &[g.clone()], &asg(&[(x, 2)])).unwrap();
        let expect = vec![
            ctx.mk_poly_atom(g, Rel::Gt),
            ctx.mk_poly_atom(Polynomial::var(x), Rel::Gt),
        ];
        assert_eq!(cell.levels[0].atoms, expect);

        // degree 1: no derivative atoms beyond the polynomial itself
        let h = Polynomial::var(x).sub(&o, &c(1));
        let cell = cell_basic(&ctx, &[h.clone()], &asg(&[(x, 5)])).unwrap();
        assert_eq!(cell.levels[0].atoms, vec![ctx.mk_poly_atom(h, Rel::Gt)]);
    }

    #[test]
    fn sign_condition_examples() {
        let (ctx, x, y) = ctx_xy();
        let o = ctx.order();
        let f = circle(&ctx, x, y);
        let a = sign_condition(&ctx, &f, &asg(&[(x, 1), (y, 2)])).unwrap();
        assert_eq!(a, ctx.mk_poly_atom(f.clone(), Rel::Gt));

        let g = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let roots = realalg::isolate_real_roots(&o, &g).unwrap();
        let mut m = Assignment::new();
        m.insert(x, Value::Real(roots[1].clone()));
        let a = sign_condition(&ctx, &g, &m).unwrap();
        assert_eq!(a, ctx.mk_poly_atom(g.clone(), Rel::Eq));

        let a = sign_condition(&ctx, &g, &asg(&[(x, 1)])).unwrap();
        assert_eq!(a, ctx.mk_poly_atom(g, Rel::Lt));
    }

    #[test]
    fn vanishing_factor_recorded_in_basic() {
        let (ctx, x, y) = ctx_xy();
        let o = ctx.order();
        // f = (x^2-2) * y vanishes identically in y at x = sqrt2; the
        // content factor carries the vanishing as an equality at level x.
        let g = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let f = g.mul(&o, &Polynomial::var(y));
        let roots = realalg::isolate_real_roots(&o, &g).unwrap();
        let mut m = Assignment::new();
        m.insert(x, Value::Real(roots[1].clone()));
        m.insert(y, Value::Real(AlgebraicNumber::from_int(5)));
        let cell = cell_basic(&ctx, &[f.clone()], &m).unwrap();
        let eq_atom = ctx.mk_poly_atom(g, Rel::Eq);
        assert!(
            cell.levels.iter().any(|l| l.atoms.contains(&eq_atom)),
            "vanishing factor should be recorded as an equality: {cell:?}"
        );
        // the full polynomial still evaluates to zero on the sample
        let full = sign_condition(&ctx, &f, &m).unwrap();
        assert_eq!(full, ctx.mk_poly_atom(f, Rel::Eq));
    }
}
