//! Binary floating point with a run-level precision, backed by `dashu-float`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;
use num_rational::BigRational;

type F = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct BigFloat(F);

fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    let sign = if sign == num_bigint::Sign::Minus { Sign::Negative } else { Sign::Positive };
    IBig::from_parts(sign, mag)
}

impl BigFloat {
    pub fn from_rational(q: &BigRational, precision: usize) -> Self {
        let n = F::from(to_ibig(q.numer())).with_precision(precision).value();
        let d = F::from(to_ibig(q.denom())).with_precision(precision).value();
        Self(n / d)
    }

    pub fn from_i64(v: i64, precision: usize) -> Self {
        Self(F::from(v).with_precision(precision).value())
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    /// Parses a decimal literal or a `p/q` rational.
    pub fn parse(s: &str, precision: usize) -> Result<Self, crate::error::Error> {
        Ok(Self::from_rational(&super::rational::parse_rational(s)?, precision))
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    pub fn sqrt(&self) -> Self {
        Self(self.0.sqrt())
    }

    pub fn exp(&self) -> Self {
        Self(self.0.exp())
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        *self.0.repr().significand() == IBig::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0.repr().sign() == Sign::Negative && !self.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_negative() && !self.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        Self(self.0.powi(IBig::from(e)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Relative deviation `|a-b| / max(|a|,|b|)`, zero when both vanish.
    pub fn rel_diff(&self, other: &Self) -> Self {
        let scale = self.abs().max(other.abs());
        if scale.is_zero() {
            return Self::zero(self.precision());
        }
        &(self - other).abs() / &scale
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let d = self.0.to_decimal().value().with_precision(digits).value();
        let repr = d.repr();
        let sig = repr.significand().to_string();
        let (neg, sig) = match sig.strip_prefix('-') {
            Some(s) => (true, s.to_string()),
            None => (false, sig),
        };
        let exp10 = repr.exponent() + sig.len() as isize - 1;
        let mant = if sig.len() > 1 { format!("{}.{}", &sig[..1], sig[1..].trim_end_matches('0')) } else { sig.clone() };
        let mant = mant.trim_end_matches('.');
        format!("{}{}e{}", if neg { "-" } else { "" }, mant, exp10)
    }
}

impl fmt::Display for BigFloat {
    /// Fixed notation, 40 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.0.to_decimal().value().with_precision(40).value();
        let repr = d.repr();
        let sig = repr.significand().to_string();
        let (neg, digits) = match sig.strip_prefix('-') {
            Some(s) => (true, s.to_string()),
            None => (false, sig),
        };
        let exp = repr.exponent();
        let body = if exp >= 0 {
            format!("{}{}", digits, "0".repeat(exp as usize))
        } else {
            let shift = (-exp) as usize;
            let (int, frac) = if digits.len() > shift {
                (digits[..digits.len() - shift].to_string(), digits[digits.len() - shift..].to_string())
            } else {
                ("0".to_string(), format!("{}{}", "0".repeat(shift - digits.len()), digits))
            };
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int
            } else {
                format!("{int}.{frac}")
            }
        };
        write!(f, "{}{}", if neg { "-" } else { "" }, body)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                BigFloat(&self.0 $op &rhs.0)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                BigFloat(self.0 $op rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn sqrt_two_squared() {
        let two = BigFloat::from_i64(2, 256);
        let s = two.sqrt();
        let err = (&(&s * &s) - &two).abs();
        assert!(err < BigFloat::from_rational(&rat(1, 1), 256).powi(1) / BigFloat::from_i64(2, 256).powi(250));
    }

    #[test]
    fn fixed_notation() {
        assert_eq!(BigFloat::from_rational(&rat(-3, 8), 128).to_string(), "-0.375");
        assert_eq!(BigFloat::from_i64(1200, 128).to_string(), "1200");
        assert_eq!(BigFloat::from_rational(&rat(1, 1000), 64).to_sci_string(3), "1e-3");
    }

    #[test]
    fn from_large_rational() {
        let q = BigRational::new(BigInt::from(10).pow(40) + 1, BigInt::from(10).pow(40));
        let f = BigFloat::from_rational(&q, 256);
        assert!((f.to_f64() - 1.0).abs() < 1e-15);
        assert_eq!(BigFloat::from_rational(&rat(-1, 3), 64).signum(), -1);
    }
}
