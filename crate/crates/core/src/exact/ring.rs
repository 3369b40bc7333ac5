use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::Gq;
use super::poly::Poly;
use super::rational::bits;
use super::rational_fn::RationalFn;

/// Commutative ring with exact division where the quotient is known to exist.
pub trait Ring: Clone + PartialEq + Debug + Zero + One + Send + Sync {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// `self / rhs`; callers guarantee exactness (panics otherwise).
    fn div_exact(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self {
        Self::zero().sub_ref(self)
    }
    fn bit_size(&self) -> u64;
}

/// Function-like ring elements: polynomials and rational functions in `x`.
pub trait FnRing: Ring {
    fn derivative(&self) -> Self;
    fn shift(&self, delta: &Gq) -> Self;
    fn mul_poly(&self, p: &Poly) -> Self;
    fn from_poly(p: Poly) -> Self;
    fn eval(&self, x: &Gq) -> Option<Gq>;
}

impl Ring for Gq {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn bit_size(&self) -> u64 {
        self.bits()
    }
}

impl Ring for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn bit_size(&self) -> u64 {
        bits(self)
    }
}

impl Ring for Poly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("inexact polynomial division")
    }
    fn bit_size(&self) -> u64 {
        self.bits()
    }
}

impl FnRing for Poly {
    fn derivative(&self) -> Self {
        Poly::derivative(self)
    }
    fn shift(&self, delta: &Gq) -> Self {
        Poly::shift(self, delta)
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        self * p
    }
    fn from_poly(p: Poly) -> Self {
        p
    }
    fn eval(&self, x: &Gq) -> Option<Gq> {
        Some(Poly::eval(self, x))
    }
}

impl Ring for RationalFn {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn bit_size(&self) -> u64 {
        self.bits()
    }
}

impl FnRing for RationalFn {
    fn derivative(&self) -> Self {
        RationalFn::derivative(self)
    }
    fn shift(&self, delta: &Gq) -> Self {
        RationalFn::shift(self, delta)
    }
    fn mul_poly(&self, p: &Poly) -> Self {
        RationalFn::mul_poly(self, p)
    }
    fn from_poly(p: Poly) -> Self {
        RationalFn::from_poly(p)
    }
    fn eval(&self, x: &Gq) -> Option<Gq> {
        RationalFn::eval(self, x)
    }
}
