//! Pseudo-division, subresultant remainder sequences, resultants,
//! discriminants, gcds and square-free parts.
//!
//! Resultants use the subresultant PRS rather than Sylvester determinant
//! expansion to control coefficient growth. The discriminant convention is
//! `disc_x(f) = res_x(f, f') / lc_x(f)` with no extra sign factor; projection
//! only consumes discriminants up to sign.

use super::{Int, Polynomial, Var, VarOrder};
use crate::error::{Error, Result};
use num_traits::One;

/// Dense view of a polynomial in one variable with polynomial coefficients.
struct InX {
    coeffs: Vec<Polynomial>,
}

impl InX {
    fn new(order: &VarOrder, f: &Polynomial, x: Var) -> Self {
        let mut coeffs = f.coeffs_in(order, x);
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        InX { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &Polynomial {
        self.coeffs.last().unwrap()
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    fn scale(&self, order: &VarOrder, k: &Polynomial) -> InX {
        InX {
            coeffs: self.coeffs.iter().map(|c| c.mul(order, k)).collect(),
        }
    }

    /// self - other * k * x^shift
    fn sub_scaled_shifted(
        &self,
        order: &VarOrder,
        other: &InX,
        k: &Polynomial,
        shift: usize,
    ) -> InX {
        let n = self.coeffs.len().max(other.coeffs.len() + shift);
        let mut out = vec![Polynomial::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let t = c.mul(order, k);
            out[i + shift] = out[i + shift].sub(order, &t);
        }
        let mut r = InX { coeffs: out };
        r.trim();
        r
    }

    fn to_poly(&self, order: &VarOrder, x: Var) -> Polynomial {
        Polynomial::from_coeffs_in(order, x, &self.coeffs)
    }
}

/// Pseudo-remainder: returns `r` with `lc_x(g)^(d+1) * f = q*g + r` where
/// `d = deg_x(f) - deg_x(g)`. Requires `deg_x(f) >= deg_x(g) >= 0`, `g`
/// nonzero in `x`-degree terms.
pub fn pseudo_rem(order: &VarOrder, f: &Polynomial, g: &Polynomial, x: Var) -> Polynomial {
    let a = InX::new(order, f, x);
    let b = InX::new(order, g, x);
    assert!(!b.is_zero(), "pseudo_rem by zero");
    assert!(a.deg() >= b.deg(), "pseudo_rem: degree order");
    let d = b.lc().clone();
    let mut e = (a.deg() - b.deg() + 1) as u32;
    let mut r = a;
    while !r.is_zero() && r.deg() >= b.deg() {
        let k = r.deg() - b.deg();
        let s = r.lc().clone();
        r = r.scale(order, &d).sub_scaled_shifted(order, &b, &s, k);
        e -= 1;
        if r.is_zero() {
            break;
        }
    }
    let mut rp = r.to_poly(order, x);
    for _ in 0..e {
        rp = rp.mul(order, &d);
    }
    rp
}

/// Exact polynomial division; panics if the division is not exact.
pub fn exact_div(order: &VarOrder, f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert!(!g.is_zero(), "exact_div by zero");
    if f.is_zero() {
        return Polynomial::zero();
    }
    if let Some(k) = g.as_constant() {
        return f.exact_div_int(k);
    }
    let x = g.top_var().unwrap();
    let a = InX::new(order, f, x);
    let b = InX::new(order, g, x);
    let n = b.deg();
    let mut r = a;
    let mut q = vec![Polynomial::zero(); r.coeffs.len()];
    while !r.is_zero() && r.deg() >= n {
        let c = exact_div(order, r.lc(), b.lc());
        let k = r.deg() - n;
        q[k] = c.clone();
        r = r.sub_scaled_shifted(order, &b, &c, k);
    }
    assert!(r.is_zero(), "exact_div: not divisible");
    Polynomial::from_coeffs_in(order, x, &q)
}

/// `res_x(f, g)`. Both arguments must have positive degree in `x`.
pub fn resultant(order: &VarOrder, f: &Polynomial, g: &Polynomial, x: Var) -> Result<Polynomial> {
    if f.degree_in(x) == 0 || g.degree_in(x) == 0 {
        return Err(Error::Degree(format!(
            "resultant requires positive degree in the eliminated variable \
             (got {} and {})",
            f.degree_in(x),
            g.degree_in(x)
        )));
    }
    Ok(resultant_any(order, f, g, x))
}

/// Resultant allowing degenerate degrees (used internally by elimination):
/// `res_x(f, g) = g^deg_x(f)` when `g` is free of `x`, and `0` when either
/// argument is zero.
pub(crate) fn resultant_any(
    order: &VarOrder,
    f: &Polynomial,
    g: &Polynomial,
    x: Var,
) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let m = f.degree_in(x);
    let n = g.degree_in(x);
    if m < n {
        let r = resultant_any(order, g, f, x);
        return if (m as u64 * n as u64) % 2 == 1 { r.neg() } else { r };
    }
    if n == 0 {
        return g.pow(order, m);
    }
    // m >= n >= 1: subresultant PRS.
    let mut a = f.clone();
    let mut b = g.clone();
    let mut gg = Polynomial::one();
    let mut h = Polynomial::one();
    let mut s = 1i32;
    loop {
        let da = a.degree_in(x);
        let db = b.degree_in(x);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(order, &a, &b, x);
        a = b;
        b = if r.is_zero() {
            Polynomial::zero()
        } else {
            let mut denom = gg.clone();
            for _ in 0..delta {
                denom = denom.mul(order, &h);
            }
            exact_div(order, &r, &denom)
        };
        if b.is_zero() {
            // a still has positive degree in x: common factor.
            return Polynomial::zero();
        }
        gg = a.leading_coeff_in(order, x);
        if delta > 0 {
            // h := g^delta / h^(delta-1)
            let num = gg.pow(order, delta);
            let den = h.pow(order, delta - 1);
            h = exact_div(order, &num, &den);
        }
        if b.degree_in(x) == 0 {
            let da = a.degree_in(x);
            let num = b.pow(order, da);
            let den = h.pow(order, da - 1);
            let res = exact_div(order, &num, &den);
            return if s < 0 { res.neg() } else { res };
        }
    }
}

/// `disc_x(f) = res_x(f, f') / lc_x(f)`. Requires `deg_x(f) >= 2`.
pub fn discriminant(order: &VarOrder, f: &Polynomial, x: Var) -> Result<Polynomial> {
    if f.degree_in(x) < 2 {
        return Err(Error::Degree(format!(
            "discriminant requires degree >= 2 in the variable (got {})",
            f.degree_in(x)
        )));
    }
    let fp = f.derivative(order, x);
    if fp.is_zero() {
        return Ok(Polynomial::zero());
    }
    let r = if fp.degree_in(x) == 0 {
        resultant_any(order, f, &fp, x)
    } else {
        resultant(order, f, &fp, x)?
    };
    let lc = f.leading_coeff_in(order, x);
    Ok(exact_div(order, &r, &lc))
}

/// Content of `f` with respect to `x`: the gcd of its `x`-coefficients.
pub fn content_in(order: &VarOrder, f: &Polynomial, x: Var) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in f.coeffs_in(order, x) {
        if !c.is_zero() {
            g = gcd(order, &g, &c);
        }
    }
    g
}

/// Multivariate gcd via primitive subresultant remainder sequences.
/// The result is sign-normalized (positive leading sign).
pub fn gcd(order: &VarOrder, f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.sign_normalized();
    }
    if g.is_zero() {
        return f.sign_normalized();
    }
    match (f.as_constant(), g.as_constant()) {
        (Some(a), Some(b)) => Polynomial::constant(num_integer::Integer::gcd(a, b)),
        (Some(a), None) => Polynomial::constant(num_integer::Integer::gcd(a, &g.content_int())),
        (None, Some(b)) => Polynomial::constant(num_integer::Integer::gcd(b, &f.content_int())),
        (None, None) => {
            let vf = f.top_var().unwrap();
            let vg = g.top_var().unwrap();
            let x = if order.level(vf) >= order.level(vg) { vf } else { vg };
            if f.degree_in(x) == 0 {
                return gcd(order, f, &content_in(order, g, x));
            }
            if g.degree_in(x) == 0 {
                return gcd(order, &content_in(order, f, x), g);
            }
            let cf = content_in(order, f, x);
            let cg = content_in(order, g, x);
            let c = gcd(order, &cf, &cg);
            let pf = exact_div(order, f, &cf);
            let pg = exact_div(order, g, &cg);
            let raw = prs_last(order, &pf, &pg, x);
            let pp = if raw.degree_in(x) == 0 {
                Polynomial::one()
            } else {
                let cont = content_in(order, &raw, x);
                exact_div(order, &raw, &cont)
            };
            c.mul(order, &pp).sign_normalized()
        }
    }
}

/// Last nonzero element of the subresultant PRS of `f`, `g` in `x`.
fn prs_last(order: &VarOrder, f: &Polynomial, g: &Polynomial, x: Var) -> Polynomial {
    let (mut a, mut b) = if f.degree_in(x) >= g.degree_in(x) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    if b.degree_in(x) == 0 {
        return b;
    }
    let mut gg = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = a.degree_in(x);
        let db = b.degree_in(x);
        let delta = da - db;
        let r = pseudo_rem(order, &a, &b, x);
        if r.is_zero() {
            return b;
        }
        let mut denom = gg.clone();
        for _ in 0..delta {
            denom = denom.mul(order, &h);
        }
        let nb = exact_div(order, &r, &denom);
        a = b;
        b = nb;
        gg = a.leading_coeff_in(order, x);
        if delta > 0 {
            let num = gg.pow(order, delta);
            let den = h.pow(order, delta - 1);
            h = exact_div(order, &num, &den);
        }
        if b.degree_in(x) == 0 {
            return b;
        }
    }
}

/// Square-free part of `f` with respect to `x`: `f / gcd(f, f')`.
pub fn square_free_part(order: &VarOrder, f: &Polynomial, x: Var) -> Polynomial {
    if f.degree_in(x) == 0 {
        return f.clone();
    }
    let fp = f.derivative(order, x);
    let g = gcd(order, f, &fp);
    if g.as_constant().is_some() {
        return f.clone();
    }
    exact_div(order, f, &g)
}

/// Principal subresultant coefficient set of `(f, g)` with respect to `x`,
/// collected from the subresultant PRS (leading coefficients of the chain
/// elements plus the final constant-degree element). Used by the
/// conservative projection operator; a superset is sound there.
pub fn subresultant_psc(
    order: &VarOrder,
    f: &Polynomial,
    g: &Polynomial,
    x: Var,
) -> Vec<Polynomial> {
    let mut out = Vec::new();
    if f.degree_in(x) == 0 || g.degree_in(x) == 0 {
        return out;
    }
    let (mut a, mut b) = if f.degree_in(x) >= g.degree_in(x) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    let mut gg = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let da = a.degree_in(x);
        let db = b.degree_in(x);
        let delta = da - db;
        out.push(b.leading_coeff_in(order, x));
        let r = pseudo_rem(order, &a, &b, x);
        if r.is_zero() {
            return out;
        }
        let mut denom = gg.clone();
        for _ in 0..delta {
            denom = denom.mul(order, &h);
        }
        let nb = exact_div(order, &r, &denom);
        a = b;
        b = nb;
        gg = a.leading_coeff_in(order, x);
        if delta > 0 {
            let num = gg.pow(order, delta);
            let den = h.pow(order, delta - 1);
            h = exact_div(order, &num, &den);
        }
        if b.degree_in(x) == 0 {
            out.push(b.clone());
            return out;
        }
    }
}

/// Helper for elimination: the gcd of `f`'s coefficients when `f` is viewed
/// as a polynomial in all variables other than `y`, i.e. the `Z[y]`-content.
/// The result is a polynomial in `y` only.
pub(crate) fn y_content(order: &VarOrder, f: &Polynomial, y: Var) -> Polynomial {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Vec<(Var, u32)>, Vec<(Int, u32)>> = BTreeMap::new();
    for (c, m) in f.to_monomials() {
        let yp = m.get(&y).copied().unwrap_or(0);
        let rest: Vec<(Var, u32)> = m.into_iter().filter(|(v, _)| *v != y).collect();
        groups.entry(rest).or_default().push((c, yp));
    }
    let mut g = Polynomial::zero();
    for (_, terms) in groups {
        let poly_in_y = Polynomial::from_monomials(
            order,
            terms.into_iter().map(|(c, p)| {
                let mut m = BTreeMap::new();
                if p > 0 {
                    m.insert(y, p);
                }
                (c, m)
            }),
        );
        g = gcd(order, &g, &poly_in_y);
        if g.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            break;
        }
    }
    g
}

#[allow(unused_imports)]
use num_traits::Signed;

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

    #[test]
    fn resultant_examples() {
        let (o, x, y) = setup();
        // res_x(x^2-2, x-y) = y^2-2  (Sylvester determinant by hand)
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let g = Polynomial::var(x).sub(&o, &Polynomial::var(y));
        let r = resultant(&o, &f, &g, x).unwrap();
        assert_eq!(r, Polynomial::var(y).pow(&o, 2).sub(&o, &c(2)));

        // res_x(x-1, x+1) = 2  (2x2 Sylvester determinant)
        let f = Polynomial::var(x).sub(&o, &c(1));
        let g = Polynomial::var(x).add(&o, &c(1));
        assert_eq!(resultant(&o, &f, &g, x).unwrap(), c(2));

        // res_x(x^2, x) = 0  (shared root)
        let f = Polynomial::var(x).pow(&o, 2);
        let g = Polynomial::var(x);
        assert!(resultant(&o, &f, &g, x).unwrap().is_zero());

        // degenerate degree is an error
        assert!(resultant(&o, &c(3), &g, x).is_err());
    }

    #[test]
    fn discriminant_examples() {
        let (o, x, y) = setup();
        // disc_x(x^2+y^2-2) = 4(y^2-2) under our convention (spec value
        // -4(y^2-2) holds up to the documented sign normalization).
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        let d = discriminant(&o, &f, x).unwrap();
        let expected = Polynomial::var(y).pow(&o, 2).sub(&o, &c(2)).scale_pub(4);
        assert!(d == expected || d == expected.neg());

        // disc_x(x^2-2) = ±8
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let d = discriminant(&o, &f, x).unwrap();
        assert!(d == c(8) || d == c(-8));

        // disc of a square is 0
        let f = Polynomial::var(x)
            .sub(&o, &Polynomial::var(y))
            .pow(&o, 2);
        assert!(discriminant(&o, &f, x).unwrap().is_zero());
    }

    #[test]
    fn gcd_and_square_free() {
        let (o, x, y) = setup();
        // gcd((x-y)^2 (x+1), (x-y)(x+2)) = x-y
        let xmy = Polynomial::var(x).sub(&o, &Polynomial::var(y));
        let f = xmy.pow(&o, 2).mul(&o, &Polynomial::var(x).add(&o, &c(1)));
        let g = xmy.mul(&o, &Polynomial::var(x).add(&o, &c(2)));
        assert_eq!(gcd(&o, &f, &g), xmy.sign_normalized());

        // square-free part of (x-y)^2(x+1)
        let sf = square_free_part(&o, &f, x);
        let expected = xmy.mul(&o, &Polynomial::var(x).add(&o, &c(1)));
        assert_eq!(sf.sign_normalized(), expected.sign_normalized());
    }

    #[test]
    fn resultant_specializes() {
        let (o, x, y) = setup();
        // res_x(f,g) evaluated at rational y equals the univariate resultant
        // when degrees do not drop.
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).mul(&o, &Polynomial::var(x)))
            .sub(&o, &c(3));
        let g = Polynomial::var(x)
            .mul(&o, &c(2))
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(1));
        let r = resultant(&o, &f, &g, x).unwrap();
        for v in [-2i64, -1, 0, 1, 2, 5] {
            let val = crate::poly::Rat::from(Int::from(v));
            let fv = f.substitute_rational(&o, y, &val);
            let gv = g.substitute_rational(&o, y, &val);
            let rv = r.substitute_rational(&o, y, &val);
            let direct = resultant(&o, &fv, &gv, x).unwrap();
            assert_eq!(rv, direct, "at y = {v}");
        }
    }
}

#[cfg(test)]
impl Polynomial {
    fn scale_pub(&self, k: i64) -> Polynomial {
        self.mul(&VarOrder::new(), &Polynomial::constant_i64(k))
    }
}
