use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::Gq;
use super::poly::Poly;
use crate::error::Error;

/// Reduced quotient `num/den` of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            return Self { num, den };
        }
        let inv = lead.inv();
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn bits(&self) -> u64 {
        self.num.bits() + self.den.bits()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn recip(&self) -> Result<Self, Error> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &Gq) -> Self {
        Self::reduce(self.num.scale(s), self.den.clone())
    }

    pub fn shift(&self, delta: &Gq) -> Self {
        Self { num: self.num.shift(delta), den: self.den.shift(delta) }
    }

    pub fn star(&self) -> Self {
        Self { num: self.num.star(), den: self.den.star() }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Gq) -> Option<Gq> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| &self.num.eval(x) / &d)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn powi(&self, e: i32) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.recip().expect("inverse of zero rational function").pow(e.unsigned_abs())
        }
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFn {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl From<Poly> for RationalFn {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::reduce(&self.num - &rhs.num, self.den.clone());
        }
        RationalFn::reduce(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        RationalFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFn::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -self.num, den: self.den }
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn reduce_examples() {
        let r = RationalFn::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(r, RationalFn::from_poly(Poly::from_ints(&[1, 1])));
        let r = RationalFn::new(Poly::from_ints(&[0, 2]), Poly::from_ints(&[4])).unwrap();
        assert_eq!(r.num(), &Poly::new(vec![Gq::zero(), Gq::real(rat(1, 2))]));
        assert_eq!(r.den(), &Poly::one());
        let r = RationalFn::new(Poly::zero(), Poly::x()).unwrap();
        assert!(r.is_zero());
        assert!(RationalFn::new(Poly::x(), Poly::zero()).is_err());
    }

    #[test]
    fn scalar_invariance() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let q = Poly::from_ints(&[5, 0, 1]);
        let a = Gq::new(rat(2, 3), rat(-1, 1));
        assert_eq!(
            RationalFn::new(p.scale(&a), q.scale(&a)).unwrap(),
            RationalFn::new(p, q).unwrap()
        );
    }

    #[test]
    fn quotient_rule() {
        let r = RationalFn::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[1, 1])).unwrap();
        let expected = RationalFn::new(Poly::from_ints(&[0, 2, 1]), Poly::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!(r.derivative(), expected);
    }
}
