//! Exact real algebraic numbers: isolation, comparison, refinement, and sign
//! determination of multivariate polynomials at algebraic points.
//!
//! Sign determination at algebraic points eliminates assigned variables one
//! at a time with resultants against the defining polynomials, producing a
//! defining polynomial of the evaluated value; interval arithmetic is only an
//! accelerator and zero is always decided exactly.

pub mod interval;
pub mod univ;

pub use interval::RatInterval;
pub use univ::{isolate as isolate_locs, sturm_sequence, sturm_total_roots, RootLoc, UPoly};

use crate::error::{Error, Result};
use crate::poly::{self, Int, Polynomial, Rat, Var, VarOrder};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// A real algebraic number: either a rational (fast path) or the unique root
/// of a square-free primitive integer polynomial inside an open isolating
/// interval whose endpoints are themselves not roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgebraicNumber {
    Rational(Rat),
    Root { poly: UPoly, lo: Rat, hi: Rat },
}

impl AlgebraicNumber {
    pub fn from_rat(q: Rat) -> Self {
        AlgebraicNumber::Rational(q)
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicNumber::Rational(Rat::from(Int::from(n)))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            AlgebraicNumber::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn lo(&self) -> Rat {
        match self {
            AlgebraicNumber::Rational(q) => q.clone(),
            AlgebraicNumber::Root { lo, .. } => lo.clone(),
        }
    }

    pub fn hi(&self) -> Rat {
        match self {
            AlgebraicNumber::Rational(q) => q.clone(),
            AlgebraicNumber::Root { hi, .. } => hi.clone(),
        }
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo(), self.hi())
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    /// One bisection step. May discover that the value is rational.
    pub fn refine_once(&mut self) {
        if let AlgebraicNumber::Root { poly, lo, hi } = self {
            let mid = (lo.clone() + hi.clone()) / Rat::from(Int::from(2));
            match poly.sign_at(&mid) {
                0 => *self = AlgebraicNumber::Rational(mid),
                s => {
                    if poly.sign_at(lo) == s {
                        *lo = mid;
                    } else {
                        *hi = mid;
                    }
                }
            }
        }
    }

    /// Same value with interval width at most `width`. A no-op on rationals
    /// and on intervals already at least that narrow.
    pub fn refine(&self, width: &Rat) -> AlgebraicNumber {
        let mut a = self.clone();
        while a.width() > *width {
            a.refine_once();
        }
        a
    }

    pub fn compare_rat(&self, q: &Rat) -> Ordering {
        match self {
            AlgebraicNumber::Rational(v) => v.cmp(q),
            AlgebraicNumber::Root { poly, lo, hi } => {
                if q <= lo {
                    return Ordering::Greater;
                }
                if q >= hi {
                    return Ordering::Less;
                }
                let sq = poly.sign_at(q);
                if sq == 0 {
                    return Ordering::Equal;
                }
                if sq == poly.sign_at(lo) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Exact trichotomy; terminates by refinement plus an exact equality
    /// test on the gcd of the defining polynomials.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        match (self, other) {
            (AlgebraicNumber::Rational(a), AlgebraicNumber::Rational(b)) => a.cmp(b),
            (AlgebraicNumber::Rational(a), _) => other.compare_rat(a).reverse(),
            (_, AlgebraicNumber::Rational(b)) => self.compare_rat(b),
            (
                AlgebraicNumber::Root { poly: pa, .. },
                AlgebraicNumber::Root { poly: pb, .. },
            ) => {
                let w = pa.gcd(pb).normalized();
                let mut a = self.clone();
                let mut b = other.clone();
                loop {
                    if let (Some(qa), Some(qb)) = (a.as_rational(), b.as_rational()) {
                        return qa.cmp(qb);
                    }
                    if a.hi() <= b.lo() {
                        return Ordering::Less;
                    }
                    if b.hi() <= a.lo() {
                        return Ordering::Greater;
                    }
                    if w.degree() >= 1 {
                        let jlo = a.lo().max(b.lo());
                        let jhi = a.hi().min(b.hi());
                        if jlo < jhi && w.sign_at(&jlo) * w.sign_at(&jhi) < 0 {
                            return Ordering::Equal;
                        }
                    }
                    a.refine_once();
                    b.refine_once();
                }
            }
        }
    }

    /// Exact sign of a univariate polynomial at this value.
    pub fn sign_of_upoly(&self, u: &UPoly) -> i8 {
        if u.is_zero() {
            return 0;
        }
        match self {
            AlgebraicNumber::Rational(q) => u.sign_at(q),
            AlgebraicNumber::Root { poly, lo, hi } => {
                let w = u.gcd(poly).normalized();
                if w.degree() >= 1 && w.sign_at(lo) * w.sign_at(hi) < 0 {
                    return 0;
                }
                let mut a = self.clone();
                loop {
                    if let Some(q) = a.as_rational() {
                        return u.sign_at(q);
                    }
                    let iv = u.eval_interval(&a.interval());
                    if let Some(s) = iv.definite_sign() {
                        return s;
                    }
                    a.refine_once();
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.compare_rat(&Rat::zero()) == Ordering::Less
    }

    /// Exact floor.
    pub fn floor(&self) -> Int {
        match self {
            AlgebraicNumber::Rational(q) => q.floor().to_integer(),
            AlgebraicNumber::Root { .. } => {
                let mut a = self.clone();
                loop {
                    if let Some(q) = a.as_rational() {
                        return q.floor().to_integer();
                    }
                    let fl = a.lo().floor().to_integer();
                    let fh = a.hi().floor().to_integer();
                    if fl == fh {
                        return fl;
                    }
                    let mut n: Int = &fl + 1;
                    let mut found = None;
                    while n <= fh {
                        if a.compare_rat(&Rat::from(n.clone())) == Ordering::Equal {
                            found = Some(n.clone());
                            break;
                        }
                        n += 1;
                    }
                    if let Some(n) = found {
                        return n;
                    }
                    a.refine_once();
                }
            }
        }
    }

    pub fn approx_f64(&self) -> f64 {
        let a = self.refine(&Rat::new(Int::one(), Int::from(1 << 24)));
        let mid = (a.lo() + a.hi()) / Rat::from(Int::from(2));
        rat_to_f64(&mid)
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    let pf = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    pf / df
}

/// 1-based index of this root among the real roots of its defining
/// polynomial, for `(root-of f k)` printing.
pub fn root_index(a: &AlgebraicNumber) -> Option<usize> {
    match a {
        AlgebraicNumber::Rational(_) => None,
        AlgebraicNumber::Root { poly, .. } => {
            let roots = algebraic_roots_of_upoly(poly);
            roots
                .iter()
                .position(|r| r.compare(a) == Ordering::Equal)
                .map(|i| i + 1)
        }
    }
}

/// All real roots of a univariate integer polynomial as algebraic numbers,
/// in increasing order with pairwise disjoint isolating intervals.
pub fn algebraic_roots_of_upoly(u: &UPoly) -> Vec<AlgebraicNumber> {
    if u.is_zero() || u.degree() == 0 {
        return vec![];
    }
    let sf = u.square_free_part();
    if sf.degree() == 1 {
        return vec![AlgebraicNumber::Rational(Rat::new(
            -sf.coeff(0),
            sf.coeff(1),
        ))];
    }
    univ::isolate(&sf)
        .into_iter()
        .map(|loc| match loc {
            RootLoc::Exact(q) => AlgebraicNumber::Rational(q),
            RootLoc::Interval(lo, hi) => AlgebraicNumber::Root {
                poly: sf.clone(),
                lo,
                hi,
            },
        })
        .collect()
}

/// Converts a polynomial mentioning at most the variable `x` into the dense
/// univariate form.
pub fn to_upoly(order: &VarOrder, f: &Polynomial, x: Var) -> UPoly {
    let coeffs = f
        .coeffs_in(order, x)
        .into_iter()
        .map(|c| {
            c.as_constant()
                .cloned()
                .expect("to_upoly: polynomial is not univariate")
        })
        .collect();
    UPoly::new(coeffs)
}

pub fn upoly_to_poly(order: &VarOrder, u: &UPoly, x: Var) -> Polynomial {
    let coeffs: Vec<Polynomial> = u
        .coeffs
        .iter()
        .map(|c| Polynomial::constant(c.clone()))
        .collect();
    if coeffs.is_empty() {
        return Polynomial::zero();
    }
    Polynomial::from_coeffs_in(order, x, &coeffs)
}

/// Ordered sequence of all distinct real roots of a univariate polynomial.
pub fn isolate_real_roots(order: &VarOrder, f: &Polynomial) -> Result<Vec<AlgebraicNumber>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = f.vars();
    if vars.len() > 1 {
        return Err(Error::Precondition(
            "isolate_real_roots requires a univariate polynomial".into(),
        ));
    }
    if vars.is_empty() {
        return Ok(vec![]);
    }
    Ok(algebraic_roots_of_upoly(&to_upoly(order, f, vars[0])))
}

/// A real-valued point: every variable maps to an exact algebraic number.
pub type RealPoint = HashMap<Var, AlgebraicNumber>;

fn split_point(
    f: &Polynomial,
    point: &RealPoint,
    skip: Option<Var>,
) -> Result<(HashMap<Var, Rat>, Vec<(Var, AlgebraicNumber)>)> {
    let mut rats = HashMap::new();
    let mut algs = Vec::new();
    for v in f.vars() {
        if Some(v) == skip {
            continue;
        }
        match point.get(&v) {
            Some(AlgebraicNumber::Rational(q)) => {
                rats.insert(v, q.clone());
            }
            Some(a @ AlgebraicNumber::Root { .. }) => algs.push((v, a.clone())),
            None => return Err(Error::IncompleteAssignment(format!("{v:?}"))),
        }
    }
    Ok((rats, algs))
}

fn poly_interval_eval(f: &Polynomial, iv: &HashMap<Var, RatInterval>) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for (c, m) in f.to_monomials() {
        let mut term = RatInterval::point(Rat::from(c));
        for (v, p) in m {
            term = term.mul(&iv[&v].pow(p));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Synthetic top variable used by the value-elimination machinery.
fn extended_order(order: &VarOrder) -> (VarOrder, Var) {
    let t = Var(u32::MAX);
    let mut eo = order.clone();
    eo.push(t);
    (eo, t)
}

pub(crate) enum Elim {
    Poly(Polynomial),
    /// The input vanishes identically once the value is substituted.
    Vanishes,
}

/// Eliminates `y` from `g` given an algebraic value for `y`: the result is a
/// nonzero polynomial that vanishes wherever `g` does at the value. When the
/// defining polynomial shares a factor with the `Z[y]`-content of `g`, the
/// factor is either split off the defining polynomial (value not a root of
/// it) or witnesses that `g` vanishes identically at the value.
pub(crate) fn eliminate_var(
    order: &VarOrder,
    g: &Polynomial,
    y: Var,
    a: &AlgebraicNumber,
) -> Elim {
    if let AlgebraicNumber::Rational(q) = a {
        let r = g.substitute_rational(order, y, q);
        return if r.is_zero() {
            Elim::Vanishes
        } else {
            Elim::Poly(r)
        };
    }
    if !g.mentions(y) {
        return Elim::Poly(g.clone());
    }
    let AlgebraicNumber::Root { poly: defining, .. } = a else {
        unreachable!()
    };
    let mut d = defining.clone();
    loop {
        let cg = poly::y_content(order, g, y);
        if cg.degree_in(y) >= 1 {
            let cg_u = to_upoly(order, &cg, y);
            let h = cg_u.gcd(&d).normalized();
            if h.degree() >= 1 {
                if a.sign_of_upoly(&h) == 0 {
                    return Elim::Vanishes;
                }
                d = d.exact_div(&h).normalized();
                continue;
            }
        }
        let dp = upoly_to_poly(order, &d, y);
        let r = poly::resultant_any(order, g, &dp, y);
        debug_assert!(!r.is_zero(), "repaired resultant vanished");
        return Elim::Poly(r);
    }
}

/// Defining polynomial of the value `g(point)` where every variable of `g`
/// is assigned an algebraic (non-rational) value.
fn value_defining(
    order: &VarOrder,
    g: &Polynomial,
    algs: &[(Var, AlgebraicNumber)],
) -> Result<UPoly> {
    let (eo, t) = extended_order(order);
    let mut cur = Polynomial::var(t).sub(&eo, g);
    let mut vars: Vec<&(Var, AlgebraicNumber)> = algs.iter().collect();
    vars.sort_by_key(|(v, _)| std::cmp::Reverse(order.level(*v)));
    for (y, a) in vars {
        if !cur.mentions(*y) {
            continue;
        }
        match eliminate_var(&eo, &cur, *y, a) {
            Elim::Poly(p) => cur = p,
            Elim::Vanishes => {
                return Err(Error::DegenerateElimination(
                    "value elimination vanished unexpectedly".into(),
                ))
            }
        }
    }
    Ok(to_upoly(&eo, &cur, t))
}

/// Exact sign of `f` at a total algebraic point. Zero is decided exactly via
/// a defining polynomial of the evaluated value, never by interval evidence.
pub fn sign_at(order: &VarOrder, f: &Polynomial, point: &RealPoint) -> Result<i8> {
    let (rats, mut algs) = split_point(f, point, None)?;
    let g = f.substitute_rationals(order, &rats);
    if let Some(c) = g.as_constant() {
        return Ok(int_sign(c));
    }
    let mut ivs: HashMap<Var, RatInterval> =
        algs.iter().map(|(v, a)| (*v, a.interval())).collect();
    for _ in 0..4 {
        if let Some(s) = poly_interval_eval(&g, &ivs).definite_sign() {
            return Ok(s);
        }
        for (v, a) in algs.iter_mut() {
            a.refine_once();
            ivs.insert(*v, a.interval());
        }
    }
    // Exact route: every nonzero root of the value's defining polynomial is
    // bounded away from zero, so refinement either certifies the sign or
    // pins the value inside the zero gap.
    let z = value_defining(order, &g, &algs)?;
    debug_assert!(!z.is_zero());
    let k = z.trailing_zeros();
    let lower_bound = if k == 0 {
        None
    } else {
        let w = z.shift_down(k);
        let w0 = w.coeff(0).abs();
        let wmax = w.coeffs.iter().map(|c| c.abs()).max().unwrap();
        Some(Rat::new(w0.clone(), w0 + wmax))
    };
    let mut rounds = 0usize;
    loop {
        let iv = poly_interval_eval(&g, &ivs);
        if let Some(s) = iv.definite_sign() {
            return Ok(s);
        }
        if let Some(lb) = &lower_bound {
            if iv.lo > -lb.clone() && iv.hi < lb.clone() {
                return Ok(0);
            }
        }
        for (v, a) in algs.iter_mut() {
            a.refine_once();
            ivs.insert(*v, a.interval());
        }
        rounds += 1;
        assert!(rounds < 10_000, "sign_at refinement did not converge");
    }
}

fn int_sign(c: &Int) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Shape of `f` in the variable `x` once all other variables are assigned.
#[derive(Debug, Clone)]
pub enum RootsAt {
    /// The polynomial vanishes identically at the point.
    Vanishes,
    /// Nonzero and root-free, with the given constant sign.
    NoRoots(i8),
    /// Distinct real roots in increasing order.
    Roots(Vec<AlgebraicNumber>),
}

/// Degree of `f` in `x` once all other variables take their values at the
/// point; `None` when `f` vanishes identically there.
pub fn effective_degree(
    order: &VarOrder,
    f: &Polynomial,
    point: &RealPoint,
    x: Var,
) -> Result<Option<usize>> {
    let (rats, _) = split_point(f, point, Some(x))?;
    let g = f.substitute_rationals(order, &rats);
    let coeffs = g.coeffs_in(order, x);
    for i in (0..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        if sign_at(order, &coeffs[i], point)? != 0 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Isolates the real roots in `x` of `f` after substituting algebraic values
/// for all other variables of `f`.
pub fn roots_at(order: &VarOrder, f: &Polynomial, point: &RealPoint, x: Var) -> Result<RootsAt> {
    let (rats, algs) = split_point(f, point, Some(x))?;
    let g = f.substitute_rationals(order, &rats);
    if !g.mentions(x) {
        if g.is_zero() {
            return Ok(RootsAt::Vanishes);
        }
        let s = sign_at(order, &g, point)?;
        return Ok(if s == 0 {
            RootsAt::Vanishes
        } else {
            RootsAt::NoRoots(s)
        });
    }
    // Effective degree at the point.
    let coeffs = g.coeffs_in(order, x);
    let mut effdeg = None;
    for i in (0..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        if sign_at(order, &coeffs[i], point)? != 0 {
            effdeg = Some(i);
            break;
        }
    }
    let Some(n) = effdeg else {
        return Ok(RootsAt::Vanishes);
    };
    if n == 0 {
        let s = sign_at(order, &coeffs[0], point)?;
        return Ok(RootsAt::NoRoots(s));
    }
    if algs.is_empty() {
        let u = to_upoly(order, &g, x);
        return Ok(RootsAt::Roots(algebraic_roots_of_upoly(&u)));
    }
    // Candidate roots from resultant elimination, exact filtering after.
    let mut full_point = point.clone();
    full_point.retain(|v, _| g.mentions(*v));
    'attempt: for perm in elimination_orders(order, &algs) {
        let mut cur = g.clone();
        for idx in &perm {
            let (y, a) = &algs[*idx];
            if !cur.mentions(*y) {
                continue;
            }
            match eliminate_var(order, &cur, *y, a) {
                Elim::Poly(p) => cur = p,
                Elim::Vanishes => continue 'attempt,
            }
        }
        debug_assert!(cur.vars().iter().all(|v| *v == x));
        let u = to_upoly(order, &cur, x);
        let mut roots = Vec::new();
        for cand in algebraic_roots_of_upoly(&u) {
            let mut pt = full_point.clone();
            pt.insert(x, cand.clone());
            if sign_at(order, &g, &pt)? == 0 {
                roots.push(cand);
            }
        }
        return Ok(RootsAt::Roots(roots));
    }
    Err(Error::DegenerateElimination(format!(
        "all elimination orders degenerated for {f:?}"
    )))
}

fn elimination_orders(order: &VarOrder, algs: &[(Var, AlgebraicNumber)]) -> Vec<Vec<usize>> {
    let mut desc: Vec<usize> = (0..algs.len()).collect();
    desc.sort_by_key(|i| std::cmp::Reverse(order.level(algs[*i].0)));
    let mut asc = desc.clone();
    asc.reverse();
    let mut out = vec![desc, asc];
    out.dedup();
    if algs.len() <= 4 && algs.len() >= 2 {
        let mut idx: Vec<usize> = (0..algs.len()).collect();
        permute(&mut idx, 0, &mut out);
    }
    out
}

fn permute(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        if !out.contains(idx) {
            out.push(idx.clone());
        }
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// A rational strictly between two algebraic values (`a < b` required).
pub fn rational_between(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Rat {
    debug_assert_eq!(a.compare(b), Ordering::Less);
    let mut ra = a.clone();
    let mut rb = b.clone();
    loop {
        if let (Some(qa), Some(qb)) = (ra.as_rational(), rb.as_rational()) {
            return (qa + qb) / Rat::from(Int::from(2));
        }
        if ra.hi() < rb.lo() {
            return (ra.hi() + rb.lo()) / Rat::from(Int::from(2));
        }
        ra.refine_once();
        rb.refine_once();
    }
}

/// A rational strictly below the value.
pub fn rational_below(a: &AlgebraicNumber) -> Rat {
    Rat::from(a.lo().floor().to_integer() - 1)
}

/// A rational strictly above the value.
pub fn rational_above(a: &AlgebraicNumber) -> Rat {
    Rat::from(a.hi().ceil().to_integer() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (VarOrder, Var, Var) {
        let x = Var(0);
        let y = Var(1);
        (VarOrder::from_vars(vec![x, y]), x, y)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant_i64(n)
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn sqrt2(order: &VarOrder, x: Var) -> AlgebraicNumber {
        let f = Polynomial::var(x).pow(order, 2).sub(order, &c(2));
        let roots = isolate_real_roots(order, &f).unwrap();
        assert_eq!(roots.len(), 2);
        roots[1].clone()
    }

    #[test]
    fn isolate_examples() {
        let (o, x, _) = setup();
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let roots = isolate_real_roots(&o, &f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].is_negative());
        assert!(!roots[1].is_negative());

        let g = Polynomial::var(x).pow(&o, 2).add(&o, &c(1));
        assert!(isolate_real_roots(&o, &g).unwrap().is_empty());

        // x(x-1)(x+1)
        let h = Polynomial::var(x).pow(&o, 3).sub(&o, &Polynomial::var(x));
        let roots = isolate_real_roots(&o, &h).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, v) in roots.iter().zip([rat(-1, 1), rat(0, 1), rat(1, 1)]) {
            assert_eq!(r.compare_rat(&v), Ordering::Equal);
        }

        assert!(isolate_real_roots(&o, &Polynomial::zero()).is_err());
    }

    #[test]
    fn compare_examples() {
        let (o, x, _) = setup();
        let r2 = sqrt2(&o, x);
        // sqrt(2) < 3/2 since 2 < 9/4
        assert_eq!(r2.compare_rat(&rat(3, 2)), Ordering::Less);
        // independent isolations are equal
        let r2b = sqrt2(&o, x).refine(&rat(1, 1024));
        assert_eq!(r2.compare(&r2b), Ordering::Equal);
        // -sqrt(2) < 0
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let neg = &isolate_real_roots(&o, &f).unwrap()[0];
        assert_eq!(neg.compare_rat(&Rat::zero()), Ordering::Less);
    }

    #[test]
    fn refine_examples() {
        let (o, x, _) = setup();
        let r2 = sqrt2(&o, x).refine(&rat(1, 8));
        assert!(r2.width() <= rat(1, 8));
        assert!(r2.lo() >= rat(11, 8) && r2.hi() <= rat(3, 2));
        // rational fast path unchanged
        let q = AlgebraicNumber::from_int(7);
        assert_eq!(q.refine(&rat(1, 8)), q);
    }

    #[test]
    fn sign_at_examples() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let mut pt = RealPoint::new();
        pt.insert(x, AlgebraicNumber::from_int(1));
        pt.insert(y, AlgebraicNumber::from_int(2));
        assert_eq!(sign_at(&o, &f, &pt).unwrap(), 1);

        let g = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let mut pt = RealPoint::new();
        pt.insert(x, sqrt2(&o, x));
        assert_eq!(sign_at(&o, &g, &pt).unwrap(), 0);

        let mut pt2 = RealPoint::new();
        pt2.insert(x, AlgebraicNumber::from_int(2));
        assert_eq!(sign_at(&o, &g, &pt2).unwrap(), 1);

        // incomplete assignment is an error
        assert!(sign_at(&o, &f, &pt2).is_err());
    }

    #[test]
    fn sign_at_algebraic_cross_terms() {
        let (o, x, y) = setup();
        // x*y - 2 at x = y = sqrt2 is exactly 0.
        let f = Polynomial::var(x)
            .mul(&o, &Polynomial::var(y))
            .sub(&o, &c(2));
        let mut pt = RealPoint::new();
        pt.insert(x, sqrt2(&o, x));
        pt.insert(y, sqrt2(&o, x));
        assert_eq!(sign_at(&o, &f, &pt).unwrap(), 0);
        let g = Polynomial::var(x)
            .mul(&o, &Polynomial::var(y))
            .sub(&o, &c(1));
        assert_eq!(sign_at(&o, &g, &pt).unwrap(), 1);
    }

    #[test]
    fn roots_at_examples() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let mut pt = RealPoint::new();
        pt.insert(x, AlgebraicNumber::from_int(0));
        match roots_at(&o, &f, &pt, y).unwrap() {
            RootsAt::Roots(rs) => {
                assert_eq!(rs.len(), 2);
                assert_eq!(rs[0].compare(&rs[1]), Ordering::Less);
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut pt = RealPoint::new();
        pt.insert(x, AlgebraicNumber::from_int(3));
        match roots_at(&o, &f, &pt, y).unwrap() {
            RootsAt::Roots(rs) => assert!(rs.is_empty()),
            RootsAt::NoRoots(s) => assert_eq!(s, 1),
            other => panic!("unexpected {other:?}"),
        }
        // at x = sqrt2: y^2 = 0 has the double root 0
        let mut pt = RealPoint::new();
        pt.insert(x, sqrt2(&o, x));
        match roots_at(&o, &f, &pt, y).unwrap() {
            RootsAt::Roots(rs) => {
                assert_eq!(rs.len(), 1);
                assert_eq!(rs[0].compare_rat(&Rat::zero()), Ordering::Equal);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn roots_at_nonminimal_defining() {
        let (o, x, y) = setup();
        // alpha = 1 isolated as a root of (y-1)(y-2); f = (y-2)*x shares the
        // other factor, exercising the repair loop.
        let d = Polynomial::var(y)
            .sub(&o, &c(1))
            .mul(&o, &Polynomial::var(y).sub(&o, &c(2)));
        let du = to_upoly(&o, &d, y);
        let alpha = AlgebraicNumber::Root {
            poly: du.normalized(),
            lo: rat(1, 2),
            hi: rat(3, 2),
        };
        let f = Polynomial::var(y)
            .sub(&o, &c(2))
            .mul(&o, &Polynomial::var(x));
        let mut pt = RealPoint::new();
        pt.insert(y, alpha);
        match roots_at(&o, &f, &pt, x).unwrap() {
            RootsAt::Roots(rs) => {
                assert_eq!(rs.len(), 1);
                assert_eq!(rs[0].compare_rat(&Rat::zero()), Ordering::Equal);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn floor_and_between() {
        let (o, x, _) = setup();
        let r2 = sqrt2(&o, x);
        assert_eq!(r2.floor(), Int::from(1));
        let q = rational_between(&AlgebraicNumber::from_int(0), &r2);
        assert!(q > Rat::zero());
        assert_eq!(r2.compare_rat(&q), Ordering::Greater);
    }
}
