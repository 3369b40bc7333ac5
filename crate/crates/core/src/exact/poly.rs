use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::Gq;
use super::rational::binomial;
use crate::error::Error;

/// Univariate polynomial with Gaussian-rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Gq>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Gq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self::new(coeffs.into_iter().map(Gq::real).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Gq::from_int(c)).collect())
    }

    pub fn constant(c: Gq) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x + c`.
    pub fn linear(c: Gq) -> Self {
        Self::new(vec![c, Gq::one()])
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Gq> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Gq::is_real)
    }

    pub fn bits(&self) -> u64 {
        self.coeffs.iter().map(Gq::bits).sum()
    }

    pub fn scale(&self, s: &Gq) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn eval(&self, x: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    /// `p(x + delta)` by binomial re-expansion.
    pub fn shift(&self, delta: &Gq) -> Self {
        if delta.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        powers.push(Gq::one());
        for k in 1..n {
            powers.push(&powers[k - 1] * delta);
        }
        let mut out = vec![Gq::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                let b = BigRational::from_integer(binomial(k as u64, j as u64));
                let term = (c * &powers[k - j]).scale(&b);
                *slot += &term;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    /// Coefficientwise complex conjugation (`f*`).
    pub fn star(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(Gq::conj).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("polynomial division by zero").clone();
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return (Self::zero(), self.clone());
        }
        let inv = if dl.is_real() { Gq::real(dl.re.recip()) } else { dl.inv() };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gq::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let q = top * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k + j] -= &t;
            }
            quot[k] = q;
        }
        rem.truncate(dn - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Division that is known to be exact; returns `None` if a remainder is left.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Parses a comma-separated list of Gaussian-rational coefficients, lowest degree first.
    pub fn parse_coeffs(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = t.split(',').map(Gq::parse).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }

    /// Inverse of [`Poly::parse_coeffs`].
    pub fn coeff_string(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let (neg, body) = if complex {
                (false, format!("({c})"))
            } else {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(Gq::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Poly::new(out)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, Gq::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Poly::new(out)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gq::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn gi(re: i64, im: i64) -> Gq {
        Gq::new(rat(re, 1), rat(im, 1))
    }

    #[test]
    fn shift_examples() {
        let x2 = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(x2.shift(&Gq::zero()), x2);
        assert_eq!(Poly::x().shift(&Gq::imag(rat(1, 2))), Poly::new(vec![Gq::imag(rat(1, 2)), Gq::one()]));
        assert_eq!(x2.shift(&Gq::i()), Poly::new(vec![gi(-1, 0), gi(0, 2), gi(1, 0)]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::from_ints(&[0, 0, 0, 1]).derivative(), Poly::from_ints(&[0, 0, 3]));
        assert!(Poly::from_ints(&[7]).derivative().is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let g = (&a * &Poly::from_ints(&[2, 1])).gcd(&(&b * &Poly::from_ints(&[2, 1])).scale(&gi(3, 0)));
        assert_eq!(g, Poly::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn display_and_parse() {
        let p = Poly::new(vec![gi(1, 0), gi(-3, 0), Gq::new(rat(1, 2), rat(1, 1))]);
        assert_eq!(p.to_string(), "(1/2+i)*x^2 - 3*x + 1");
        assert_eq!(Poly::parse_coeffs(&p.coeff_string()).unwrap(), p);
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-x");
    }
}
