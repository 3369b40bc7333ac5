use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::bigfloat::BigFloat;
use super::gaussian::Gq;
use super::poly::Poly;
use super::rational_fn::RationalFn;
use super::ring::FnRing;
use crate::error::Error;

/// `base(x) · exp((a·x² + b·x)/2)` with rational `a`, `b`.
///
/// The zero function always carries `a = b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exp<T> {
    base: T,
    a: BigRational,
    b: BigRational,
}

pub type ExpPoly = Exp<Poly>;
pub type ExpPolyRatio = Exp<RationalFn>;

impl<T: FnRing> Exp<T> {
    pub fn new(base: T, a: BigRational, b: BigRational) -> Self {
        if base.is_zero() {
            return Self::zero();
        }
        Self { base, a, b }
    }

    pub fn plain(base: T) -> Self {
        Self::new(base, BigRational::zero(), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self { base: T::zero(), a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::plain(T::one())
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// `a·x + b`, the logarithmic derivative of the exponential factor.
    pub fn log_slope(a: &BigRational, b: &BigRational) -> Poly {
        Poly::from_rationals(vec![b.clone(), a.clone()])
    }

    pub fn derivative(&self) -> Self {
        let slope = Self::log_slope(&self.a, &self.b);
        let base = self.base.derivative().add_ref(&self.base.mul_poly(&slope));
        Self::new(base, self.a.clone(), self.b.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.base.mul_ref(&rhs.base), &self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub fn scale(&self, s: &Gq) -> Self {
        Self::new(self.base.mul_poly(&Poly::constant(s.clone())), self.a.clone(), self.b.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.base.neg_ref(), self.a.clone(), self.b.clone())
    }

    /// Sum of two functions sharing the same exponent pair.
    pub fn add_same(&self, rhs: &Self) -> Result<Self, Error> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.a != rhs.a || self.b != rhs.b {
            return Err(Error::ExponentMismatch);
        }
        Ok(Self::new(self.base.add_ref(&rhs.base), self.a.clone(), self.b.clone()))
    }

    pub fn sub_same(&self, rhs: &Self) -> Result<Self, Error> {
        self.add_same(&rhs.neg())
    }

    /// Value at a real rational point in floating point; `None` for complex values or poles.
    pub fn eval_float(&self, x: &BigRational, precision: usize) -> Option<BigFloat> {
        let v = self.base.eval(&Gq::real(x.clone()))?;
        if !v.is_real() {
            return None;
        }
        let expo = (&self.a * x * x + &self.b * x) / BigRational::from_integer(2.into());
        let e = BigFloat::from_rational(&expo, precision).exp();
        Some(&BigFloat::from_rational(&v.re, precision) * &e)
    }
}

impl ExpPoly {
    pub fn to_ratio(&self) -> ExpPolyRatio {
        Exp::new(RationalFn::from_poly(self.base.clone()), self.a.clone(), self.b.clone())
    }
}

impl ExpPolyRatio {
    /// Quotient of two exp-class functions; exponent pairs subtract.
    pub fn quotient<T: Clone + Into<RationalFn>>(num: &Exp<T>, den: &Exp<T>) -> Result<Self, Error> {
        let n: RationalFn = num.base.clone().into();
        let d: RationalFn = den.base.clone().into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::new(&n / &d, &num.a - &den.a, &num.b - &den.b))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        Self::quotient(self, rhs)
    }

    pub fn numerator(&self) -> ExpPoly {
        Exp::new(self.base.num().clone(), self.a.clone(), self.b.clone())
    }

    pub fn denominator(&self) -> Poly {
        self.base.den().clone()
    }
}

impl<T: fmt::Display> fmt::Display for Exp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() && self.b.is_zero() {
            return write!(f, "{}", self.base);
        }
        write!(
            f,
            "({})*exp(({}*x^2 + {}*x)/2)",
            self.base,
            super::rational::format_rational(&self.a),
            super::rational::format_rational(&self.b)
        )
    }
}

impl<T: FnRing> Default for Exp<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: FnRing> Exp<T> {
    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.a.is_zero() && self.b.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::exact::rational::{int, rat};

    #[test]
    fn derivative_examples() {
        let g = ExpPoly::new(Poly::one(), int(-1), int(0));
        assert_eq!(g.derivative(), ExpPoly::new(Poly::from_ints(&[0, -1]), int(-1), int(0)));
        let c = ExpPoly::plain(Poly::from_ints(&[5]));
        assert!(c.derivative().is_zero());
        let x3 = ExpPoly::plain(Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(x3.derivative().base(), &Poly::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn product_adds_pairs() {
        let f = ExpPoly::new(Poly::x(), int(1), rat(1, 2));
        let g = ExpPoly::new(Poly::x(), int(-3), rat(1, 2));
        let h = f.mul(&g);
        assert_eq!(h.a(), &int(-2));
        assert_eq!(h.b(), &int(1));
        assert!(f.mul(&ExpPoly::zero()).a().is_zero());
    }

    #[test]
    fn quotient_subtracts_pairs() {
        let f = ExpPoly::new(Poly::from_ints(&[0, 0, 1]), int(1), int(0));
        let g = ExpPoly::new(Poly::x(), int(-1), int(2));
        let q = ExpPolyRatio::quotient(&f, &g).unwrap();
        assert_eq!(q, ExpPolyRatio::new(RationalFn::from_poly(Poly::x()), int(2), int(-2)));
    }
}
