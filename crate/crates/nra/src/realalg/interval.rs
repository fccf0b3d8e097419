//! Closed rational intervals, used as evaluation accelerators.

use crate::poly::Rat;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= Rat::zero() && Rat::zero() <= self.hi
    }

    /// Sign if the interval excludes zero, else `None`.
    pub fn definite_sign(&self) -> Option<i8> {
        if self.lo > Rat::zero() {
            Some(1)
        } else if self.hi < Rat::zero() {
            Some(-1)
        } else if self.lo == self.hi {
            Some(0)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RatInterval::point(Rat::from(crate::poly::Int::from(1)));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &crate::poly::Int) -> Self {
        let k = Rat::from(k.clone());
        let a = &self.lo * &k;
        let b = &self.hi * &k;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }
}
