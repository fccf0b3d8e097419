//! Exact multivariate polynomial arithmetic over the integers.
//!
//! Polynomials are recursive in their top variable: a polynomial is either an
//! integer constant or a sparse sequence of `(coefficient, power)` pairs where
//! every coefficient only mentions variables strictly below the top variable
//! in the global [`VarOrder`]. The representation is canonical: equal
//! polynomials have equal representations.

mod algebra;

pub use algebra::{
    content_in, discriminant, exact_div, gcd, pseudo_rem, resultant, square_free_part,
    subresultant_psc,
};
pub(crate) use algebra::{resultant_any, y_content};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

/// A problem variable. Identifiers are dense indices into the owning
/// context's registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Real,
    Bool,
}

/// Total order on the Real variables of a problem. Fixed for the lifetime of
/// a solver instance; interpolation re-fixes it in a fresh context.
#[derive(Debug, Clone, Default)]
pub struct VarOrder {
    vars: Vec<Var>,
    level_of: HashMap<Var, usize>,
}

impl VarOrder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vars(vars: Vec<Var>) -> Self {
        let mut o = Self::new();
        for v in vars {
            o.push(v);
        }
        o
    }

    pub fn push(&mut self, v: Var) {
        assert!(
            !self.level_of.contains_key(&v),
            "variable already in the order"
        );
        self.level_of.insert(v, self.vars.len());
        self.vars.push(v);
    }

    pub fn level(&self, v: Var) -> usize {
        *self
            .level_of
            .get(&v)
            .unwrap_or_else(|| panic!("variable {v:?} not in the order"))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.level_of.contains_key(&v)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// `a` is strictly below `b`.
    pub fn below(&self, a: Var, b: Var) -> bool {
        self.level(a) < self.level(b)
    }

    pub fn max_var<I: IntoIterator<Item = Var>>(&self, vars: I) -> Option<Var> {
        vars.into_iter().max_by_key(|v| self.level(*v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Const(Int),
    /// Invariants: terms are sorted by strictly increasing power, no zero
    /// coefficients, the highest power is >= 1, and every coefficient only
    /// mentions variables strictly below `var`.
    Node {
        var: Var,
        terms: Vec<(Polynomial, u32)>,
    },
}

/// An integer-coefficient multivariate polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    repr: Repr,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Const(c) => write!(f, "{c}"),
            Repr::Node { var, terms } => {
                let parts: Vec<String> = terms
                    .iter()
                    .rev()
                    .map(|(c, p)| format!("({c:?})*v{}^{p}", var.0))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            repr: Repr::Const(Int::zero()),
        }
    }

    pub fn one() -> Self {
        Polynomial {
            repr: Repr::Const(Int::one()),
        }
    }

    pub fn constant(c: Int) -> Self {
        Polynomial {
            repr: Repr::Const(c),
        }
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(Int::from(c))
    }

    pub fn var(v: Var) -> Self {
        Polynomial {
            repr: Repr::Node {
                var: v,
                terms: vec![(Polynomial::one(), 1)],
            },
        }
    }

    fn node(var: Var, mut terms: Vec<(Polynomial, u32)>) -> Self {
        terms.retain(|(c, _)| !c.is_zero());
        terms.sort_by_key(|&(_, p)| p);
        if terms.is_empty() {
            return Polynomial::zero();
        }
        if terms.len() == 1 && terms[0].1 == 0 {
            return terms.pop().unwrap().0;
        }
        debug_assert!(terms.windows(2).all(|w| w[0].1 < w[1].1));
        Polynomial {
            repr: Repr::Node { var, terms },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Const(c) if c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        matches!(&self.repr, Repr::Const(_))
    }

    pub fn as_constant(&self) -> Option<&Int> {
        match &self.repr {
            Repr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// The top variable, or `None` for constants.
    pub fn top_var(&self) -> Option<Var> {
        match &self.repr {
            Repr::Const(_) => None,
            Repr::Node { var, .. } => Some(*var),
        }
    }

    /// Degree in the top variable (0 for constants).
    pub fn degree(&self) -> u32 {
        match &self.repr {
            Repr::Const(_) => 0,
            Repr::Node { terms, .. } => terms.last().unwrap().1,
        }
    }

    /// Degree in an arbitrary variable.
    pub fn degree_in(&self, x: Var) -> u32 {
        match &self.repr {
            Repr::Const(_) => 0,
            Repr::Node { var, terms } => {
                if *var == x {
                    terms.last().unwrap().1
                } else {
                    terms.iter().map(|(c, _)| c.degree_in(x)).max().unwrap_or(0)
                }
            }
        }
    }

    /// All variables, sorted by id.
    pub fn vars(&self) -> Vec<Var> {
        let mut set = std::collections::BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<Var>) {
        if let Repr::Node { var, terms } = &self.repr {
            out.insert(*var);
            for (c, _) in terms {
                c.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, x: Var) -> bool {
        match &self.repr {
            Repr::Const(_) => false,
            Repr::Node { var, terms } => *var == x || terms.iter().any(|(c, _)| c.mentions(x)),
        }
    }

    /// Dense coefficients with respect to `x`, ascending powers. The result
    /// has `degree_in(x) + 1` entries, each free of `x`.
    pub fn coeffs_in(&self, order: &VarOrder, x: Var) -> Vec<Polynomial> {
        let d = self.degree_in(x) as usize;
        let mut out = vec![Polynomial::zero(); d + 1];
        match &self.repr {
            Repr::Node { var, terms } if *var == x => {
                for (c, p) in terms {
                    out[*p as usize] = c.clone();
                }
            }
            _ => {
                if self.mentions(x) {
                    // x occurs below the top variable: regroup via monomials.
                    for (c, m) in self.to_monomials() {
                        let px = m.get(&x).copied().unwrap_or(0) as usize;
                        let rest: Vec<_> =
                            m.iter().filter(|(v, _)| **v != x).map(|(v, p)| (*v, *p)).collect();
                        let mono = Polynomial::from_monomials(
                            order,
                            std::iter::once((c, rest.into_iter().collect())),
                        );
                        out[px] = out[px].add(order, &mono);
                    }
                } else {
                    out[0] = self.clone();
                }
            }
        }
        out
    }

    /// Leading coefficient with respect to `x`.
    pub fn leading_coeff_in(&self, order: &VarOrder, x: Var) -> Polynomial {
        self.coeffs_in(order, x).pop().unwrap()
    }

    /// Builds a polynomial from dense ascending coefficients in `x`.
    pub fn from_coeffs_in(order: &VarOrder, x: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (p, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c.mul(order, &Polynomial::var(x).pow(order, p as u32));
            acc = acc.add(order, &term);
        }
        acc
    }

    pub fn neg(&self) -> Polynomial {
        match &self.repr {
            Repr::Const(c) => Polynomial::constant(-c),
            Repr::Node { var, terms } => Polynomial::node(
                *var,
                terms.iter().map(|(c, p)| (c.neg(), *p)).collect(),
            ),
        }
    }

    pub fn add(&self, order: &VarOrder, other: &Polynomial) -> Polynomial {
        match (&self.repr, &other.repr) {
            (Repr::Const(a), Repr::Const(b)) => Polynomial::constant(a + b),
            (Repr::Node { var, terms }, Repr::Const(_)) => {
                let mut ts = terms.clone();
                Self::add_term(&mut ts, other.clone(), 0, order);
                Polynomial::node(*var, ts)
            }
            (Repr::Const(_), Repr::Node { .. }) => other.add(order, self),
            (
                Repr::Node { var: va, terms: ta },
                Repr::Node { var: vb, terms: tb },
            ) => {
                if va == vb {
                    let mut ts = ta.clone();
                    for (c, p) in tb {
                        Self::add_term(&mut ts, c.clone(), *p, order);
                    }
                    Polynomial::node(*va, ts)
                } else if order.below(*vb, *va) {
                    let mut ts = ta.clone();
                    Self::add_term(&mut ts, other.clone(), 0, order);
                    Polynomial::node(*va, ts)
                } else {
                    other.add(order, self)
                }
            }
        }
    }

    fn add_term(terms: &mut Vec<(Polynomial, u32)>, c: Polynomial, p: u32, order: &VarOrder) {
        if c.is_zero() {
            return;
        }
        match terms.binary_search_by_key(&p, |&(_, q)| q) {
            Ok(i) => {
                let merged = terms[i].0.add(order, &c);
                if merged.is_zero() {
                    terms.remove(i);
                } else {
                    terms[i].0 = merged;
                }
            }
            Err(i) => terms.insert(i, (c, p)),
        }
    }

    pub fn sub(&self, order: &VarOrder, other: &Polynomial) -> Polynomial {
        self.add(order, &other.neg())
    }

    pub fn mul(&self, order: &VarOrder, other: &Polynomial) -> Polynomial {
        match (&self.repr, &other.repr) {
            (Repr::Const(a), Repr::Const(b)) => Polynomial::constant(a * b),
            (Repr::Const(a), _) => {
                if a.is_zero() {
                    Polynomial::zero()
                } else {
                    other.scale(a)
                }
            }
            (_, Repr::Const(_)) => other.mul(order, self),
            (
                Repr::Node { var: va, terms: ta },
                Repr::Node { var: vb, terms: tb },
            ) => {
                if va == vb {
                    let mut ts: Vec<(Polynomial, u32)> = Vec::new();
                    for (ca, pa) in ta {
                        for (cb, pb) in tb {
                            Self::add_term(&mut ts, ca.mul(order, cb), pa + pb, order);
                        }
                    }
                    Polynomial::node(*va, ts)
                } else if order.below(*vb, *va) {
                    Polynomial::node(
                        *va,
                        ta.iter().map(|(c, p)| (c.mul(order, other), *p)).collect(),
                    )
                } else {
                    other.mul(order, self)
                }
            }
        }
    }

    fn scale(&self, k: &Int) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        match &self.repr {
            Repr::Const(c) => Polynomial::constant(c * k),
            Repr::Node { var, terms } => Polynomial::node(
                *var,
                terms.iter().map(|(c, p)| (c.scale(k), *p)).collect(),
            ),
        }
    }

    pub fn pow(&self, order: &VarOrder, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(order, self);
        }
        acc
    }

    /// Formal partial derivative with respect to `x`. Zero if `x` is absent.
    pub fn derivative(&self, order: &VarOrder, x: Var) -> Polynomial {
        match &self.repr {
            Repr::Const(_) => Polynomial::zero(),
            Repr::Node { var, terms } => {
                if *var == x {
                    let ts = terms
                        .iter()
                        .filter(|(_, p)| *p > 0)
                        .map(|(c, p)| (c.scale(&Int::from(*p)), p - 1))
                        .collect();
                    Polynomial::node(*var, ts)
                } else {
                    let ts = terms
                        .iter()
                        .map(|(c, p)| (c.derivative(order, x), *p))
                        .collect();
                    Polynomial::node(*var, ts)
                }
            }
        }
    }

    /// Flattens into `(coefficient, monomial)` pairs. Monomials map each
    /// variable to a positive power.
    pub fn to_monomials(&self) -> Vec<(Int, BTreeMap<Var, u32>)> {
        let mut out = Vec::new();
        self.monomials_into(&BTreeMap::new(), &mut out);
        out
    }

    fn monomials_into(
        &self,
        prefix: &BTreeMap<Var, u32>,
        out: &mut Vec<(Int, BTreeMap<Var, u32>)>,
    ) {
        match &self.repr {
            Repr::Const(c) => {
                if !c.is_zero() {
                    out.push((c.clone(), prefix.clone()));
                }
            }
            Repr::Node { var, terms } => {
                for (c, p) in terms {
                    let mut m = prefix.clone();
                    if *p > 0 {
                        m.insert(*var, *p);
                    }
                    c.monomials_into(&m, out);
                }
            }
        }
    }

    /// Rebuilds a canonical polynomial from monomials under `order`.
    pub fn from_monomials<I>(order: &VarOrder, monomials: I) -> Polynomial
    where
        I: IntoIterator<Item = (Int, BTreeMap<Var, u32>)>,
    {
        let mut acc = Polynomial::zero();
        for (c, m) in monomials {
            let mut term = Polynomial::constant(c);
            for (v, p) in m {
                term = term.mul(order, &Polynomial::var(v).pow(order, p));
            }
            acc = acc.add(order, &term);
        }
        acc
    }

    /// Re-canonicalizes under a different variable order (same variables).
    pub fn reorder(&self, new_order: &VarOrder) -> Polynomial {
        Polynomial::from_monomials(new_order, self.to_monomials())
    }

    /// Renames variables via `map`, rebuilding under `new_order`.
    pub fn rename_vars(&self, new_order: &VarOrder, map: &HashMap<Var, Var>) -> Polynomial {
        let monos = self.to_monomials().into_iter().map(|(c, m)| {
            let m2 = m
                .into_iter()
                .map(|(v, p)| (*map.get(&v).unwrap_or(&v), p))
                .collect();
            (c, m2)
        });
        Polynomial::from_monomials(new_order, monos)
    }

    /// Evaluates at a total rational point.
    pub fn eval_rat(&self, point: &HashMap<Var, Rat>) -> Rat {
        match &self.repr {
            Repr::Const(c) => Rat::from(c.clone()),
            Repr::Node { var, terms } => {
                let x = point
                    .get(var)
                    .unwrap_or_else(|| panic!("eval_rat: unassigned variable {var:?}"));
                let mut acc = Rat::zero();
                // Horner over the sparse terms (descending powers).
                let mut prev_pow: Option<u32> = None;
                for (c, p) in terms.iter().rev() {
                    if let Some(q) = prev_pow {
                        acc *= pow_rat(x, q - p);
                    }
                    acc += c.eval_rat(point);
                    prev_pow = Some(*p);
                }
                if let Some(p) = prev_pow {
                    acc *= pow_rat(x, p);
                }
                acc
            }
        }
    }

    /// Substitutes a rational value for one variable, clearing denominators
    /// by the positive factor `q^deg` (sign behavior is preserved).
    pub fn substitute_rational(&self, order: &VarOrder, x: Var, value: &Rat) -> Polynomial {
        if !self.mentions(x) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(order, x);
        let d = coeffs.len() - 1;
        let p = value.numer().clone();
        let q = value.denom().clone(); // > 0 by BigRational normalization
        let mut p_pows = vec![Int::one()];
        let mut q_pows = vec![Int::one()];
        for i in 1..=d {
            p_pows.push(&p_pows[i - 1] * &p);
            q_pows.push(&q_pows[i - 1] * &q);
        }
        let mut acc = Polynomial::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = &p_pows[i] * &q_pows[d - i];
            acc = acc.add(order, &c.scale(&k));
        }
        acc
    }

    /// Substitutes rational values for several variables.
    pub fn substitute_rationals(
        &self,
        order: &VarOrder,
        values: &HashMap<Var, Rat>,
    ) -> Polynomial {
        let mut f = self.clone();
        // Substitute from the highest level down so coefficient regrouping
        // stays cheap.
        let mut vars: Vec<Var> = f.vars().into_iter().filter(|v| values.contains_key(v)).collect();
        vars.sort_by_key(|v| std::cmp::Reverse(order.level(*v)));
        for v in vars {
            f = f.substitute_rational(order, v, &values[&v]);
        }
        f
    }

    /// Integer content (gcd of all integer coefficients), non-negative.
    pub fn content_int(&self) -> Int {
        let mut g = Int::zero();
        self.fold_coeffs(&mut |c| {
            g = num_integer::Integer::gcd(&g, c);
        });
        g
    }

    fn fold_coeffs(&self, f: &mut impl FnMut(&Int)) {
        match &self.repr {
            Repr::Const(c) => {
                if !c.is_zero() {
                    f(c)
                }
            }
            Repr::Node { terms, .. } => {
                for (c, _) in terms {
                    c.fold_coeffs(f);
                }
            }
        }
    }

    /// Divides out the positive integer content.
    pub fn primitive_int(&self) -> Polynomial {
        let g = self.content_int();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        self.exact_div_int(&g)
    }

    pub fn exact_div_int(&self, k: &Int) -> Polynomial {
        match &self.repr {
            Repr::Const(c) => {
                let (q, r) = num_integer::Integer::div_rem(c, k);
                assert!(r.is_zero(), "exact_div_int: not divisible");
                Polynomial::constant(q)
            }
            Repr::Node { var, terms } => Polynomial::node(
                *var,
                terms.iter().map(|(c, p)| (c.exact_div_int(k), *p)).collect(),
            ),
        }
    }

    /// Sign of the innermost leading coefficient (recursing through top
    /// variables). Used to pick a canonical sign for atoms.
    pub fn leading_sign(&self) -> i32 {
        match &self.repr {
            Repr::Const(c) => {
                if c.is_zero() {
                    0
                } else if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Repr::Node { terms, .. } => terms.last().unwrap().0.leading_sign(),
        }
    }

    /// Primitive part with positive leading sign: the canonical
    /// representative of the positive-scalar-multiple class.
    pub fn sign_normalized(&self) -> Polynomial {
        let p = self.primitive_int();
        if p.leading_sign() < 0 {
            p.neg()
        } else {
            p
        }
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
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

    #[test]
    fn constant_cancellation() {
        let (o, x, _) = setup();
        // (x^2 - 2) + 2 = x^2
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        let g = f.add(&o, &c(2));
        assert_eq!(g, Polynomial::var(x).pow(&o, 2));
    }

    #[test]
    fn mul_vars() {
        let (o, x, _) = setup();
        let g = Polynomial::var(x).mul(&o, &Polynomial::var(x));
        assert_eq!(g, Polynomial::var(x).pow(&o, 2));
    }

    #[test]
    fn self_subtraction() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        assert!(f.sub(&o, &f).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x).pow(&o, 2).sub(&o, &c(2));
        assert_eq!(f.derivative(&o, x), Polynomial::var(x).scale(&Int::from(2)));
        let g = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        assert_eq!(
            g.derivative(&o, y),
            Polynomial::var(y).scale(&Int::from(2))
        );
        let h = Polynomial::var(y).pow(&o, 3);
        assert!(h.derivative(&o, x).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x)
            .pow(&o, 2)
            .add(&o, &Polynomial::var(y).pow(&o, 2))
            .sub(&o, &c(2));
        // x -> 1 gives y^2 - 1
        let g = f.substitute_rational(&o, x, &Rat::from(Int::from(1)));
        assert_eq!(g, Polynomial::var(y).pow(&o, 2).sub(&o, &c(1)));
        // then y -> 2 gives the constant 3
        let h = g.substitute_rational(&o, y, &Rat::from(Int::from(2)));
        assert_eq!(h, c(3));
        // empty substitution is the identity
        let id = f.substitute_rationals(&o, &HashMap::new());
        assert_eq!(id, f);
    }

    #[test]
    fn coeffs_in_lower_var() {
        let (o, x, y) = setup();
        // f = x*y + x^2, coefficients in x: [0, y, 1]
        let f = Polynomial::var(x)
            .mul(&o, &Polynomial::var(y))
            .add(&o, &Polynomial::var(x).pow(&o, 2));
        let cs = f.coeffs_in(&o, x);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], Polynomial::var(y));
        assert_eq!(cs[2], Polynomial::one());
        let back = Polynomial::from_coeffs_in(&o, x, &cs);
        assert_eq!(back, f);
    }

    #[test]
    fn reorder_roundtrip() {
        let (o, x, y) = setup();
        let f = Polynomial::var(x)
            .mul(&o, &Polynomial::var(y).pow(&o, 2))
            .add(&o, &Polynomial::var(x).pow(&o, 3))
            .sub(&o, &c(7));
        let o2 = VarOrder::from_vars(vec![y, x]);
        let g = f.reorder(&o2);
        assert_eq!(g.top_var(), Some(x));
        assert_eq!(g.reorder(&o), f);
    }
}
