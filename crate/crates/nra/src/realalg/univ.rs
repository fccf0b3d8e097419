//! Dense univariate integer polynomials: the engine room for root isolation.
//!
//! Isolation uses Descartes/bisection on the square-free part; Sturm
//! sequences are kept alongside as the independent oracle.

use super::interval::RatInterval;
use crate::poly::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with ascending integer coefficients. The zero
/// polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    pub coeffs: Vec<Int>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn lc(&self) -> &Int {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        UPoly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, k: &Int) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(Rat::from(c.clone())));
        }
        acc
    }

    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        g
    }

    /// Primitive with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        UPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder: `lc(g)^(d+1) f = q g + r`.
    pub fn pseudo_rem(&self, g: &Self) -> Self {
        assert!(!g.is_zero());
        let mut r = self.clone();
        let d = g.lc().clone();
        let n = g.degree();
        let mut e = if r.degree() >= n { r.degree() - n + 1 } else { 0 };
        while !r.is_zero() && r.degree() >= n && r.coeffs.len() >= g.coeffs.len() {
            let k = r.degree() - n;
            let s = r.lc().clone();
            let mut out = vec![Int::zero(); r.coeffs.len()];
            for (i, c) in r.coeffs.iter().enumerate() {
                out[i] = c * &d;
            }
            for (i, c) in g.coeffs.iter().enumerate() {
                out[i + k] -= c * &s;
            }
            r = UPoly::new(out);
            e -= 1;
        }
        for _ in 0..e {
            r = r.scale(&d);
        }
        r
    }

    /// Exact division; panics if not exact.
    pub fn exact_div(&self, g: &Self) -> Self {
        assert!(!g.is_zero());
        if self.is_zero() {
            return UPoly::zero();
        }
        assert!(self.degree() >= g.degree());
        let mut r = self.coeffs.clone();
        let n = g.degree();
        let mut q = vec![Int::zero(); self.degree() - n + 1];
        for k in (0..q.len()).rev() {
            let num = std::mem::take(&mut r[k + n]);
            if num.is_zero() {
                continue;
            }
            let (c, rem) = num.div_rem(g.lc());
            assert!(rem.is_zero(), "exact_div: not divisible");
            for (i, gc) in g.coeffs.iter().enumerate() {
                if i < n {
                    r[k + i] -= gc * &c;
                }
            }
            q[k] = c;
        }
        assert!(r.iter().all(|c| c.is_zero()), "exact_div: nonzero remainder");
        UPoly::new(q)
    }

    /// Primitive-PRS gcd, normalized (primitive, positive lc).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.normalized(), other.normalized());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                let mut g = a.normalized();
                g = g.scale(&cont);
                return g;
            }
            if b.degree() == 0 {
                return UPoly::new(vec![cont]);
            }
            let r = a.pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
    }

    /// `f / gcd(f, f')`, primitive, positive lc.
    pub fn square_free_part(&self) -> Self {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return UPoly::new(vec![Int::one()]);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.normalized();
        }
        self.normalized().exact_div(&g.normalized()).normalized()
    }

    /// Number of trailing zero coefficients (multiplicity of the root 0).
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        UPoly::new(self.coeffs[k..].to_vec())
    }

    /// Power-of-two bound `B` with every real root strictly inside `(-B, B)`.
    pub fn root_bound_pow2(&self) -> Int {
        assert!(!self.is_zero() && self.degree() >= 1);
        let lc = self.lc().abs();
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap();
        // Cauchy: |root| < 1 + max|a_i| / |a_n|.
        let bound = Int::one() + max.div_ceil(&lc) + Int::one();
        let mut b = Int::one();
        while b < bound {
            b *= 2;
        }
        b
    }

    /// `p(x+1)`.
    pub fn taylor_shift_1(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if n == 0 {
            return UPoly::zero();
        }
        for k in 0..n.saturating_sub(1) {
            for i in (k..n - 1).rev() {
                let t = c[i + 1].clone();
                c[i] += t;
            }
        }
        UPoly::new(c)
    }

    /// Coefficients reversed at formal degree `n` (n >= degree).
    pub fn reverse_at(&self, n: usize) -> Self {
        let mut out = vec![Int::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[n - i] = c.clone();
        }
        UPoly::new(out)
    }

    /// `2^n p(x/2)` where `n` is the formal degree.
    pub fn scale_half(&self) -> Self {
        let n = self.degree();
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() << (n - i))
                .collect(),
        )
    }

    /// `p(k x)` for integer `k`.
    pub fn scale_arg(&self, k: &Int) -> Self {
        let mut pw = Int::one();
        UPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c * &pw;
                    pw = &pw * k;
                    r
                })
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound for the number of roots of `p` in `(0, 1)`: the sign
/// variation count of `(1+x)^n p(1/(1+x))`.
fn descartes_01(p: &UPoly) -> usize {
    let t = p.reverse_at(p.degree()).taylor_shift_1();
    sign_variations(t.coeffs.iter().map(|c| {
        if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        }
    }))
}

/// Location of one isolated real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLoc {
    Exact(Rat),
    /// Open interval with non-root endpoints containing exactly one root.
    Interval(Rat, Rat),
}

/// Isolates all distinct real roots of a nonzero polynomial, in increasing
/// order with pairwise disjoint intervals. Works on the square-free part.
pub fn isolate(f: &UPoly) -> Vec<RootLoc> {
    assert!(!f.is_zero(), "isolate: zero polynomial");
    if f.degree() == 0 {
        return vec![];
    }
    let mut sf = f.square_free_part();
    let mut out = Vec::new();
    let zero_root = sf.trailing_zeros() > 0;
    if zero_root {
        sf = sf.shift_down(sf.trailing_zeros());
    }
    if sf.degree() >= 1 {
        let bound = sf.root_bound_pow2();
        let bound_rat = Rat::from(bound.clone());

        // Negative roots: roots of p(-x) in (0, B), mirrored.
        let refl = sf.reflect();
        let mut neg = isolate_pos(&refl, &bound);
        neg.reverse();
        for loc in neg {
            out.push(match loc {
                RootLoc::Exact(r) => RootLoc::Exact(-r),
                RootLoc::Interval(lo, hi) => RootLoc::Interval(-hi, -lo),
            });
        }
        let _ = bound_rat;
        if zero_root {
            out.push(RootLoc::Exact(Rat::zero()));
        }
        out.extend(isolate_pos(&sf, &bound));
    } else if zero_root {
        out.push(RootLoc::Exact(Rat::zero()));
    }
    out
}

/// Roots of `p` in `(0, B)`, where `B` is a strict bound for all roots of
/// `p` and `p(0) != 0`.
fn isolate_pos(p: &UPoly, bound: &Int) -> Vec<RootLoc> {
    // q captures (0,1) ~ (0,B).
    let q = p.scale_arg(bound);
    let mut out = Vec::new();
    isolate_01(&q, &Rat::zero(), &Rat::from(bound.clone()), &mut out);
    out
}

/// Roots of `q` in the normalized frame `(0,1)` mapped to the original
/// interval `(lo, hi)`.
fn isolate_01(q: &UPoly, lo: &Rat, hi: &Rat, out: &mut Vec<RootLoc>) {
    let v = descartes_01(q);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(RootLoc::Interval(lo.clone(), hi.clone()));
        return;
    }
    let mid = (lo + hi) / Rat::from(Int::from(2));
    let left = q.scale_half();
    let right = left.taylor_shift_1();
    isolate_01(&left, lo, &mid, out);
    if right.coeff(0).is_zero() {
        out.push(RootLoc::Exact(mid.clone()));
    }
    let right = right.shift_down(right.trailing_zeros());
    isolate_01(&right, &mid, hi, out);
}

/// Sturm sequence of `f` (integer-scaled by positive constants only, so the
/// sign structure matches the rational sequence).
pub fn sturm_sequence(f: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() {
            seq.pop();
            return seq;
        }
        if a.degree() < b.degree() {
            // derivative of constant etc.
            return seq;
        }
        let d = a.degree() - b.degree();
        let mut r = a.pseudo_rem(b);
        // pseudo_rem multiplies by lc(b)^(d+1); flip if that factor is
        // negative so r is a positive multiple of the true remainder.
        if b.lc().is_negative() && (d + 1) % 2 == 1 {
            r = r.neg();
        }
        let next = r.neg();
        if next.is_zero() {
            return seq;
        }
        // Positive content division keeps signs intact.
        let c = next.content();
        seq.push(UPoly::new(next.coeffs.iter().map(|x| x / &c).collect()));
    }
}

/// Number of distinct real roots of `f` in the half-open interval `(a, b]`,
/// by Sturm's theorem. `f(a)` must be nonzero.
pub fn sturm_count(seq: &[UPoly], a: &Rat, b: &Rat) -> usize {
    let va = sign_variations(seq.iter().map(|p| p.sign_at(a)));
    let vb = sign_variations(seq.iter().map(|p| p.sign_at(b)));
    va - vb.min(va)
}

/// Total number of distinct real roots of a nonzero polynomial (oracle).
pub fn sturm_total_roots(f: &UPoly) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let sf = f.square_free_part();
    if sf.degree() == 0 {
        return 0;
    }
    let b = Rat::from(sf.root_bound_pow2());
    let seq = sturm_sequence(&sf);
    sturm_count(&seq, &-b.clone(), &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|c| Int::from(*c)).collect())
    }

    #[test]
    fn isolate_sqrt2() {
        // x^2 - 2 has two roots
        let f = up(&[-2, 0, 1]);
        let roots = isolate(&f);
        assert_eq!(roots.len(), 2);
        match (&roots[0], &roots[1]) {
            (RootLoc::Interval(a, b), RootLoc::Interval(c, d)) => {
                assert!(b <= &Rat::zero() || a < b);
                assert!(a < b && c < d);
                assert!(b <= c);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn isolate_no_real_roots() {
        let f = up(&[1, 0, 1]); // x^2 + 1
        assert!(isolate(&f).is_empty());
    }

    #[test]
    fn isolate_rational_roots() {
        // x(x-1)(x+1) = x^3 - x
        let f = up(&[0, -1, 0, 1]);
        let roots = isolate(&f);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn sturm_agrees() {
        let f = up(&[-2, 0, 1]);
        assert_eq!(sturm_total_roots(&f), 2);
        let g = up(&[1, 0, 1]);
        assert_eq!(sturm_total_roots(&g), 0);
        let h = up(&[0, -1, 0, 1]);
        assert_eq!(sturm_total_roots(&h), 3);
    }

    #[test]
    fn taylor_shift() {
        // (x+1)^2 = x^2 + 2x + 1
        let f = up(&[0, 0, 1]);
        assert_eq!(f.taylor_shift_1(), up(&[1, 2, 1]));
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let f = up(&[-1, 0, 1]);
        let g = up(&[-1, 1]);
        assert_eq!(f.exact_div(&g), up(&[1, 1]));
    }

    #[test]
    fn gcd_multiple_root() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let f = up(&[-1, 0, 1]);
        let g = up(&[1, -2, 1]);
        assert_eq!(f.gcd(&g), up(&[-1, 1]));
    }
}
