use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bareiss::{det, det_float};
use crate::error::{Error, Result};
use crate::exact::{BigFloat, Exp, FnRing, Gq, Poly};
use crate::grid::GridFn;

/// Derivative matrix `(d^j f_k)` with rows `j` and columns `k`.
pub fn wronskian_matrix<T: FnRing>(fs: &[T]) -> Vec<Vec<T>> {
    let n = fs.len();
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(n);
    for f in fs {
        let mut col = Vec::with_capacity(n);
        let mut cur = f.clone();
        for j in 0..n {
            if j > 0 {
                cur = cur.derivative();
            }
            col.push(cur.clone());
        }
        cols.push(col);
    }
    transpose(cols, n)
}

pub fn wronskian<T: FnRing>(fs: &[T]) -> T {
    det(wronskian_matrix(fs))
}

/// Wronskian of exp-class functions: each column's exponential is pulled out, so the
/// exponent pairs add and the base is the determinant of the reduced derivative matrix.
pub fn wronskian_exp<T: FnRing>(fs: &[Exp<T>]) -> Exp<T> {
    let (m, a, b) = wronskian_exp_parts(fs);
    Exp::new(det(m), a, b)
}

/// Reduced derivative matrix of exp-class functions and the summed exponent pair.
pub fn wronskian_exp_parts<T: FnRing>(fs: &[Exp<T>]) -> (Vec<Vec<T>>, BigRational, BigRational) {
    let n = fs.len();
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let mut cols = Vec::with_capacity(n);
    for f in fs {
        a += f.a();
        b += f.b();
        let slope = Exp::<T>::log_slope(f.a(), f.b());
        let mut col = Vec::with_capacity(n);
        let mut cur = f.base().clone();
        for j in 0..n {
            if j > 0 {
                cur = cur.derivative().add_ref(&cur.mul_poly(&slope));
            }
            col.push(cur.clone());
        }
        cols.push(col);
    }
    (transpose(cols, n), a, b)
}

/// Wronskian of the quotients `nums[k] / den` that share one denominator.
///
/// Row `j` of the derivative matrix is scaled by `den^{j+1}` so every entry stays a
/// polynomial. Returns `P` with `W[nums/den] = P / den.base()^{n(n+1)/2}`; the exponent
/// pair of `P` already accounts for the denominator's exponential.
pub fn wronskian_common_den(nums: &[Exp<Poly>], den: &Exp<Poly>) -> Exp<Poly> {
    let n = nums.len();
    let w = den.base();
    let dw = w.derivative();
    let mut a = -(den.a() * BigRational::from_integer((n as i64).into()));
    let mut b = -(den.b() * BigRational::from_integer((n as i64).into()));
    let mut cols = Vec::with_capacity(n);
    for f in nums {
        a += f.a();
        b += f.b();
        let slope = Exp::<Poly>::log_slope(&(f.a() - den.a()), &(f.b() - den.b()));
        let mut col = Vec::with_capacity(n);
        let mut cur = f.base().clone();
        for j in 0..n {
            if j > 0 {
                let k = Gq::from_int(j as i64);
                cur = &(&(&cur.derivative() * w) - &(&cur * &dw).scale(&k)) + &(&(&cur * &slope) * w);
            }
            col.push(cur.clone());
        }
        cols.push(col);
    }
    Exp::new(det(transpose(cols, n)), a, b)
}

/// The shift `i((n+1)/2 - j)γ` of row `j` (1-based) in an `n`-point imaginary-shift Casoratian.
pub fn imag_node(n: usize, j: usize, gamma: &BigRational) -> Gq {
    let half = BigRational::new((n as i64 + 1).into(), 2.into()) - BigRational::from_integer((j as i64).into());
    Gq::imag(half * gamma)
}

pub fn casoratian_imag_matrix<T: FnRing>(fs: &[T], gamma: &BigRational) -> Result<Vec<Vec<T>>> {
    if gamma.is_zero() {
        return Err(Error::ZeroGamma);
    }
    let n = fs.len();
    Ok((1..=n).map(|j| {
        let d = imag_node(n, j, gamma);
        fs.iter().map(|f| f.shift(&d)).collect()
    })
    .collect())
}

/// `i^{n(n-1)/2} det f_k(x + i((n+1)/2 - j)γ)`.
pub fn casoratian_imag<T: FnRing>(fs: &[T], gamma: &BigRational) -> Result<T> {
    let n = fs.len() as i64;
    let d = det(casoratian_imag_matrix(fs, gamma)?);
    Ok(scale_by(&d, &Gq::i_pow(n * (n - 1) / 2)))
}

pub fn casoratian_real_matrix<T: FnRing>(fs: &[T]) -> Vec<Vec<T>> {
    (0..fs.len())
        .map(|j| {
            let d = Gq::from_int(j as i64);
            fs.iter().map(|f| f.shift(&d)).collect()
        })
        .collect()
}

/// `det f_k(x + j - 1)`.
pub fn casoratian_real<T: FnRing>(fs: &[T]) -> T {
    det(casoratian_real_matrix(fs))
}

pub fn scale_by<T: FnRing>(v: &T, s: &Gq) -> T {
    if s.is_one() {
        v.clone()
    } else {
        v.mul_poly(&Poly::constant(s.clone()))
    }
}

fn transpose<T: Clone>(cols: Vec<Vec<T>>, n: usize) -> Vec<Vec<T>> {
    (0..n).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect()
}

/// Scalars that can fill a grid Casoratian.
pub trait GridDet: Clone {
    fn grid_det(m: Vec<Vec<Self>>, precision: usize) -> Self;
    fn grid_one(precision: usize) -> Self;
    fn precision_hint(&self) -> usize;
}

impl GridDet for BigRational {
    fn grid_det(m: Vec<Vec<Self>>, _precision: usize) -> Self {
        det(m)
    }
    fn grid_one(_precision: usize) -> Self {
        BigRational::one()
    }
    fn precision_hint(&self) -> usize {
        0
    }
}

impl GridDet for BigFloat {
    fn grid_det(m: Vec<Vec<Self>>, precision: usize) -> Self {
        det_float(m, precision)
    }
    fn grid_one(precision: usize) -> Self {
        BigFloat::one(precision)
    }
    fn precision_hint(&self) -> usize {
        self.precision()
    }
}

/// Real-shift Casoratian of sampled functions. The result lives on `{0, …, x_max - n + 1}`
/// where `x_max` is the smallest window among the inputs; `len` sizes the output for `n = 0`.
pub fn casoratian_real_grid<T: GridDet>(fs: &[GridFn<T>], len: usize) -> Result<GridFn<T>> {
    let n = fs.len();
    if n == 0 {
        return Ok(GridFn::from_fn(len, |_| T::grid_one(0)));
    }
    let avail = fs.iter().map(GridFn::len).min().unwrap_or(0);
    if avail < n {
        return Err(Error::WindowUnderflow { required: n, available: avail });
    }
    let precision = fs[0].values()[0].precision_hint();
    let out = (0..=avail - n)
        .map(|x| {
            let m = (0..n).map(|j| fs.iter().map(|f| f.values()[x + j].clone()).collect()).collect();
            T::grid_det(m, precision)
        })
        .collect();
    Ok(GridFn::new(out))
}
