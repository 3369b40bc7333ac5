use crate::exact::{BigFloat, Ring};

/// Fraction-free (Bareiss) elimination with row exchanges when a pivot vanishes.
pub fn det<T: Ring>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul_ref(&m[i][j]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg_ref()
    } else {
        d
    }
}

/// Gaussian elimination with partial pivoting in floating point.
pub fn det_float(mut m: Vec<Vec<BigFloat>>, precision: usize) -> BigFloat {
    let n = m.len();
    let mut acc = BigFloat::one(precision);
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a][k].abs().partial_cmp(&m[b][k].abs()).expect("finite")).expect("row");
        if m[p][k].is_zero() {
            return BigFloat::zero(precision);
        }
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        let pivot = m[k][k].clone();
        acc = &acc * &pivot;
        for i in k + 1..n {
            let factor = &m[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let t = &m[i][j] - &(&factor * &m[k][j]);
                m[i][j] = t;
            }
        }
    }
    acc
}
