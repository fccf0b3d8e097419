//! Feasible value sets for a single variable under unit constraints:
//! finite unions of intervals with exact algebraic endpoints.

use crate::error::Result;
use crate::model::Rel;
use crate::poly::{Int, Polynomial, Rat, Var, VarOrder};
use crate::realalg::{self, AlgebraicNumber, RealPoint, RootsAt};
use num_traits::Zero;
use std::cmp::Ordering;

/// One interval; `None` bounds are infinite, the flag marks a closed end.
#[derive(Debug, Clone)]
pub struct FInterval {
    pub lo: Option<(AlgebraicNumber, bool)>,
    pub hi: Option<(AlgebraicNumber, bool)>,
}

impl FInterval {
    pub fn full() -> Self {
        FInterval { lo: None, hi: None }
    }

    pub fn point(a: AlgebraicNumber) -> Self {
        FInterval {
            lo: Some((a.clone(), true)),
            hi: Some((a, true)),
        }
    }

    fn valid(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some((a, ca)), Some((b, cb))) => match a.compare(b) {
                Ordering::Less => true,
                Ordering::Equal => *ca && *cb,
                Ordering::Greater => false,
            },
            _ => true,
        }
    }

    pub fn contains_rat(&self, q: &Rat) -> bool {
        if let Some((a, closed)) = &self.lo {
            match a.compare_rat(q) {
                Ordering::Less => {}
                Ordering::Equal => {
                    if !closed {
                        return false;
                    }
                }
                Ordering::Greater => return false,
            }
        }
        if let Some((b, closed)) = &self.hi {
            match b.compare_rat(q) {
                Ordering::Greater => {}
                Ordering::Equal => {
                    if !closed {
                        return false;
                    }
                }
                Ordering::Less => return false,
            }
        }
        true
    }

    fn intersect(&self, other: &FInterval) -> Option<FInterval> {
        let lo = stronger_lo(&self.lo, &other.lo);
        let hi = stronger_hi(&self.hi, &other.hi);
        let r = FInterval { lo, hi };
        if r.valid() {
            Some(r)
        } else {
            None
        }
    }
}

fn stronger_lo(
    a: &Option<(AlgebraicNumber, bool)>,
    b: &Option<(AlgebraicNumber, bool)>,
) -> Option<(AlgebraicNumber, bool)> {
    match (a, b) {
        (None, x) => x.clone(),
        (x, None) => x.clone(),
        (Some((va, ca)), Some((vb, cb))) => match va.compare(vb) {
            Ordering::Greater => Some((va.clone(), *ca)),
            Ordering::Less => Some((vb.clone(), *cb)),
            Ordering::Equal => Some((va.clone(), *ca && *cb)),
        },
    }
}

fn stronger_hi(
    a: &Option<(AlgebraicNumber, bool)>,
    b: &Option<(AlgebraicNumber, bool)>,
) -> Option<(AlgebraicNumber, bool)> {
    match (a, b) {
        (None, x) => x.clone(),
        (x, None) => x.clone(),
        (Some((va, ca)), Some((vb, cb))) => match va.compare(vb) {
            Ordering::Less => Some((va.clone(), *ca)),
            Ordering::Greater => Some((vb.clone(), *cb)),
            Ordering::Equal => Some((va.clone(), *ca && *cb)),
        },
    }
}

/// Union of disjoint intervals in increasing order.
#[derive(Debug, Clone)]
pub struct FeasibleSet {
    pub intervals: Vec<FInterval>,
}

impl FeasibleSet {
    pub fn full() -> Self {
        FeasibleSet {
            intervals: vec![FInterval::full()],
        }
    }

    pub fn empty() -> Self {
        FeasibleSet { intervals: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intersect(&self, other: &FeasibleSet) -> FeasibleSet {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        FeasibleSet { intervals: out }
    }

    pub fn contains_rat(&self, q: &Rat) -> bool {
        self.intervals.iter().any(|i| i.contains_rat(q))
    }

    /// Deterministic value selection: prefer 0, else a smallest-magnitude
    /// integer, else a rational strictly inside a bounded interval, else an
    /// isolated algebraic point.
    pub fn pick_value(&self) -> Option<AlgebraicNumber> {
        if self.is_empty() {
            return None;
        }
        let zero = Rat::zero();
        if self.contains_rat(&zero) {
            return Some(AlgebraicNumber::Rational(zero));
        }
        // Smallest-magnitude integer present in any interval.
        let mut best: Option<Int> = None;
        for iv in &self.intervals {
            if let Some(n) = smallest_magnitude_integer(iv) {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let (an, ab) = (abs(&n), abs(b));
                        an < ab || (an == ab && n < *b)
                    }
                };
                if better {
                    best = Some(n);
                }
            }
        }
        if let Some(n) = best {
            return Some(AlgebraicNumber::Rational(Rat::from(n)));
        }
        // Rational strictly inside the first interval that has room.
        for iv in &self.intervals {
            if let (Some((a, _)), Some((b, _))) = (&iv.lo, &iv.hi) {
                if a.compare(b) == Ordering::Less {
                    return Some(AlgebraicNumber::Rational(realalg::rational_between(a, b)));
                }
            }
        }
        // Point intervals: the algebraic sample itself.
        for iv in &self.intervals {
            if let (Some((a, true)), Some((b, true))) = (&iv.lo, &iv.hi) {
                if a.compare(b) == Ordering::Equal {
                    return Some(a.clone());
                }
            }
        }
        None
    }
}

fn abs(n: &Int) -> Int {
    use num_traits::Signed;
    n.abs()
}

fn smallest_magnitude_integer(iv: &FInterval) -> Option<Int> {
    // Candidate nearest to zero within the interval bounds.
    let lo_int: Option<Int> = iv.lo.as_ref().map(|(a, closed)| {
        let f = a.floor();
        let fr = Rat::from(f.clone());
        match (a.compare_rat(&fr), closed) {
            (Ordering::Equal, true) => f,
            _ => f + 1,
        }
    });
    let hi_int: Option<Int> = iv.hi.as_ref().map(|(b, closed)| {
        let f = b.floor();
        let fr = Rat::from(f.clone());
        match (b.compare_rat(&fr), closed) {
            (Ordering::Equal, false) => f - 1,
            _ => f,
        }
    });
    match (lo_int, hi_int) {
        (None, None) => Some(Int::zero()),
        (Some(a), None) => Some(if a <= Int::zero() { Int::zero() } else { a }),
        (None, Some(b)) => Some(if b >= Int::zero() { Int::zero() } else { b }),
        (Some(a), Some(b)) => {
            if a > b {
                None
            } else if a <= Int::zero() && Int::zero() <= b {
                Some(Int::zero())
            } else if a > Int::zero() {
                Some(a)
            } else {
                Some(b)
            }
        }
    }
}

/// Contiguous sign regions of `f` in `x` over the lower-level point.
enum Region {
    Open(Option<AlgebraicNumber>, Option<AlgebraicNumber>, i8),
    Point(AlgebraicNumber),
}

fn sign_regions(
    order: &VarOrder,
    f: &Polynomial,
    point: &RealPoint,
    x: Var,
    roots: &[AlgebraicNumber],
) -> Result<Vec<Region>> {
    let mut out = Vec::new();
    let mut sample_left = |lo: Option<&AlgebraicNumber>, hi: Option<&AlgebraicNumber>| -> Rat {
        match (lo, hi) {
            (None, Some(h)) => realalg::rational_below(h),
            (Some(l), None) => realalg::rational_above(l),
            (Some(l), Some(h)) => realalg::rational_between(l, h),
            (None, None) => Rat::zero(),
        }
    };
    let n = roots.len();
    for i in 0..=n {
        let lo = if i == 0 { None } else { Some(&roots[i - 1]) };
        let hi = if i == n { None } else { Some(&roots[i]) };
        let q = sample_left(lo, hi);
        let mut pt = point.clone();
        pt.retain(|v, _| f.mentions(*v));
        pt.insert(x, AlgebraicNumber::Rational(q));
        let s = realalg::sign_at(order, f, &pt)?;
        out.push(Region::Open(lo.cloned(), hi.cloned(), s));
        if i < n {
            out.push(Region::Point(roots[i].clone()));
        }
    }
    Ok(out)
}

/// Feasible set for `x` under `f rel 0 == value`, all other variables of
/// `f` assigned by `point`.
pub fn poly_constraint_feasible(
    order: &VarOrder,
    f: &Polynomial,
    rel: Rel,
    value: bool,
    point: &RealPoint,
    x: Var,
) -> Result<FeasibleSet> {
    let roots = match realalg::roots_at(order, f, point, x)? {
        RootsAt::Vanishes => {
            return Ok(if rel.eval_sign(0) == value {
                FeasibleSet::full()
            } else {
                FeasibleSet::empty()
            })
        }
        RootsAt::NoRoots(s) => {
            return Ok(if rel.eval_sign(s) == value {
                FeasibleSet::full()
            } else {
                FeasibleSet::empty()
            })
        }
        RootsAt::Roots(rs) => rs,
    };
    if roots.is_empty() {
        // Positive effective degree but no real roots: constant sign.
        let mut pt = point.clone();
        pt.retain(|v, _| f.mentions(*v));
        pt.insert(x, AlgebraicNumber::Rational(Rat::zero()));
        let s = realalg::sign_at(order, f, &pt)?;
        return Ok(if rel.eval_sign(s) == value {
            FeasibleSet::full()
        } else {
            FeasibleSet::empty()
        });
    }
    let regions = sign_regions(order, f, point, x, &roots)?;
    let mut out: Vec<FInterval> = Vec::new();
    let mut cur: Option<FInterval> = None;
    for r in regions {
        let (seg, allowed) = match r {
            Region::Open(lo, hi, s) => (
                FInterval {
                    lo: lo.map(|a| (a, false)),
                    hi: hi.map(|a| (a, false)),
                },
                rel.eval_sign(s) == value,
            ),
            Region::Point(a) => (FInterval::point(a), rel.eval_sign(0) == value),
        };
        if allowed {
            cur = Some(match cur.take() {
                None => seg,
                Some(mut c) => {
                    // Segments are contiguous in order, so extending the
                    // upper end merges them.
                    c.hi = seg.hi;
                    c
                }
            });
        } else if let Some(c) = cur.take() {
            out.push(c);
        }
    }
    if let Some(c) = cur.take() {
        out.push(c);
    }
    Ok(FeasibleSet { intervals: out })
}

/// Feasible set for `x` under the extended constraint
/// `x rel_r root(f, k, x) == value`.
pub fn extended_constraint_feasible(
    order: &VarOrder,
    f: &Polynomial,
    rel: Rel,
    k: u32,
    value: bool,
    point: &RealPoint,
    x: Var,
) -> Result<FeasibleSet> {
    let roots = match realalg::roots_at(order, f, point, x)? {
        RootsAt::Roots(rs) => rs,
        // Vanishing or root-free: fewer than k roots, the constraint is
        // false everywhere.
        _ => vec![],
    };
    if roots.len() < k as usize {
        return Ok(if value {
            FeasibleSet::empty()
        } else {
            FeasibleSet::full()
        });
    }
    let alpha = roots[k as usize - 1].clone();
    if value {
        Ok(relation_region(rel, alpha))
    } else if rel == Rel::Eq {
        Ok(neq_region(alpha))
    } else {
        Ok(relation_region(negate_rel(rel), alpha))
    }
}

fn negate_rel(rel: Rel) -> Rel {
    match rel {
        Rel::Lt => Rel::Ge,
        Rel::Le => Rel::Gt,
        Rel::Eq => unreachable!("equality negation is a region pair"),
        Rel::Ge => Rel::Lt,
        Rel::Gt => Rel::Le,
    }
}

fn relation_region(rel: Rel, alpha: AlgebraicNumber) -> FeasibleSet {
    let iv = |lo, hi| FInterval { lo, hi };
    match rel {
        Rel::Lt => FeasibleSet {
            intervals: vec![iv(None, Some((alpha, false)))],
        },
        Rel::Le => FeasibleSet {
            intervals: vec![iv(None, Some((alpha, true)))],
        },
        Rel::Eq => FeasibleSet {
            intervals: vec![FInterval::point(alpha)],
        },
        Rel::Ge => FeasibleSet {
            intervals: vec![iv(Some((alpha, true)), None)],
        },
        Rel::Gt => FeasibleSet {
            intervals: vec![iv(Some((alpha, false)), None)],
        },
    }
}

/// Complement region of an equality: the two open rays around the point.
pub fn neq_region(alpha: AlgebraicNumber) -> FeasibleSet {
    FeasibleSet {
        intervals: vec![
            FInterval {
                lo: None,
                hi: Some((alpha.clone(), false)),
            },
            FInterval {
                lo: Some((alpha, false)),
                hi: None,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarOrder;

    fn rat(n: i64) -> Rat {
        Rat::from(Int::from(n))
    }

    #[test]
    fn pick_prefers_zero_then_small_integers() {
        let s = FeasibleSet::full();
        assert_eq!(
            s.pick_value().unwrap().compare_rat(&Rat::zero()),
            Ordering::Equal
        );
        // (1, inf): smallest integer 2
        let s = FeasibleSet {
            intervals: vec![FInterval {
                lo: Some((AlgebraicNumber::from_int(1), false)),
                hi: None,
            }],
        };
        assert_eq!(
            s.pick_value().unwrap().compare_rat(&rat(2)),
            Ordering::Equal
        );
        // (1/2, 3/4): a rational inside
        let half = AlgebraicNumber::from_rat(Rat::new(Int::from(1), Int::from(2)));
        let three_q = AlgebraicNumber::from_rat(Rat::new(Int::from(3), Int::from(4)));
        let s = FeasibleSet {
            intervals: vec![FInterval {
                lo: Some((half.clone(), false)),
                hi: Some((three_q.clone(), false)),
            }],
        };
        let v = s.pick_value().unwrap();
        assert_eq!(v.compare(&half), Ordering::Greater);
        assert_eq!(v.compare(&three_q), Ordering::Less);
    }

    #[test]
    fn poly_constraint_regions() {
        let x = Var(0);
        let o = VarOrder::from_vars(vec![x]);
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .sub(&o, &Polynomial::constant_i64(2));
        let pt = RealPoint::new();
        // x^2 - 2 < 0 is the open interval (-sqrt2, sqrt2)
        let s = poly_constraint_feasible(&o, &f, Rel::Lt, true, &pt, x).unwrap();
        assert_eq!(s.intervals.len(), 1);
        assert!(s.contains_rat(&Rat::zero()));
        assert!(!s.contains_rat(&rat(2)));
        // negated: two rays
        let s = poly_constraint_feasible(&o, &f, Rel::Lt, false, &pt, x).unwrap();
        assert_eq!(s.intervals.len(), 2);
        assert!(s.contains_rat(&rat(2)));
        assert!(s.contains_rat(&rat(-2)));
        // x^2 < 0 is empty
        let g = Polynomial::var(x).pow(&o, 2);
        let s = poly_constraint_feasible(&o, &g, Rel::Lt, true, &pt, x).unwrap();
        assert!(s.is_empty());
        // x^2 <= 0 is the point 0
        let s = poly_constraint_feasible(&o, &g, Rel::Le, true, &pt, x).unwrap();
        assert!(s.contains_rat(&Rat::zero()));
        assert!(!s.contains_rat(&rat(1)));
    }

    #[test]
    fn intersect_contradictory_bounds() {
        let x = Var(0);
        let o = VarOrder::from_vars(vec![x]);
        let pt = RealPoint::new();
        // x < 0 and x > 1
        let f = Polynomial::var(x);
        let a = poly_constraint_feasible(&o, &f, Rel::Lt, true, &pt, x).unwrap();
        let g = Polynomial::var(x).sub(&o, &Polynomial::constant_i64(1));
        let b = poly_constraint_feasible(&o, &g, Rel::Gt, true, &pt, x).unwrap();
        assert!(a.intersect(&b).is_empty());
    }
}
