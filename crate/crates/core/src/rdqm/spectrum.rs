use num_rational::BigRational;

use super::deform::deformed_potentials_bd;
use super::{ten_pow_neg, Potentials, RdqmModel};
use crate::error::{Error, Result};
use crate::exact::BigFloat;
use crate::index_set::IndexSet;
use crate::report::LabReport;

/// Number of eigenvalues below `lambda` of the symmetric tri-diagonal matrix, from the
/// signs of the `LDLᵀ` pivots.
fn sturm_count(diag: &[BigFloat], off_sq: &[BigFloat], lambda: &BigFloat, tiny: &BigFloat) -> usize {
    let mut count = 0;
    let mut q = &diag[0] - lambda;
    for i in 0..diag.len() {
        if i > 0 {
            q = &(&diag[i] - lambda) - &(&off_sq[i - 1] / &q);
        }
        if q.is_zero() {
            q = tiny.clone();
        }
        if q.is_negative() {
            count += 1;
        }
    }
    count
}

/// The `k` lowest eigenvalues of the `n × n` truncation of `H + shift`, by bisection.
pub fn lowest_eigenvalues(pot: &Potentials, shift: &BigFloat, n: usize, k: usize) -> Result<Vec<BigFloat>> {
    if k > n {
        return Err(Error::InvalidParameter(format!("{k} eigenvalues requested from a {n}×{n} matrix")));
    }
    let (diag, off) = pot.truncated(n, shift)?;
    let p = shift.precision();
    let off_sq: Vec<BigFloat> = off.iter().map(|o| o * o).collect();
    let radius = |i: usize| {
        let l = if i > 0 { off[i - 1].abs() } else { BigFloat::zero(p) };
        let r = if i + 1 < n { off[i].abs() } else { BigFloat::zero(p) };
        l + r
    };
    let lo0 = (0..n).map(|i| &diag[i] - &radius(i)).reduce(|a, b| if a < b { a } else { b }).expect("n > 0");
    let hi0 = (0..n).map(|i| &diag[i] + &radius(i)).reduce(BigFloat::max).expect("n > 0");
    let tiny = ten_pow_neg(p / 3, p);
    let stop = ten_pow_neg(p / 5, p);
    let two = BigFloat::from_i64(2, p);
    Ok((0..k)
        .map(|j| {
            let (mut lo, mut hi) = (lo0.clone(), hi0.clone());
            for _ in 0..4 * p {
                let mid = &(&lo + &hi) / &two;
                if sturm_count(&diag, &off_sq, &mid, &tiny) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if &hi - &lo <= stop {
                    break;
                }
            }
            &(&lo + &hi) / &two
        })
        .collect())
}

/// Lowest `k` eigenvalues of the `N × N` and `2N × 2N` truncations of `H_D`, against
/// `{E_n : n ∉ D_e}`. A window too short for `2N` is rebuilt larger with the same parameters.
pub fn spectrum_check(
    model: &RdqmModel,
    set: &IndexSet<BigRational>,
    n_trunc: usize,
    k: usize,
    tol: &BigFloat,
    sensitivity_tol: &BigFloat,
) -> Result<(LabReport, Vec<BigFloat>)> {
    let m = set.m();
    if n_trunc + m + 1 > model.x_max() {
        return Err(Error::WindowUnderflow { required: n_trunc + m + 1, available: model.x_max() });
    }
    let need = 2 * n_trunc + m + 2;
    let big = if model.x_max() >= need { model.clone() } else { model.resized(need)? };
    let seeds = big.seeds(set)?;
    let (pot, _) = deformed_potentials_bd(&big, set, &seeds)?;
    let shift = big.energy(set.mu());
    let (small, large) = rayon::join(
        || lowest_eigenvalues(&pot, &shift, n_trunc, k),
        || lowest_eigenvalues(&pot, &shift, 2 * n_trunc, k),
    );
    let (small, large) = (small?, large?);
    let expected: Vec<usize> = (0..).filter(|n| !set.is_deleted(*n)).take(k).collect();
    let p = model.precision();
    let mut dev = BigFloat::zero(p);
    let mut sens = BigFloat::zero(p);
    for i in 0..k {
        dev = dev.max((&small[i] - &big.energy(expected[i])).abs());
        sens = sens.max((&small[i] - &large[i]).abs());
    }
    let shown: Vec<String> = small.iter().map(|v| v.to_sci_string(12)).collect();
    let params = [
        ("dv", crate::report::list(&set.ev)),
        ("de", crate::report::list(&set.de)),
        ("N", n_trunc.to_string()),
        ("k", k.to_string()),
    ];
    let mut report = LabReport::new(
        "rdqm-spectrum",
        &params,
        format!("[{}]", shown.join(",")),
        crate::report::list(&expected),
        dev <= *tol,
    )
    .with_detail(format!(
        "max deviation {} (tolerance {}); N vs 2N sensitivity {} (threshold {})",
        dev.to_sci_string(6),
        tol.to_sci_string(3),
        sens.to_sci_string(6),
        sensitivity_tol.to_sci_string(3)
    ));
    if report.pass && sens > *sensitivity_tol {
        report = report.inconclusive();
    }
    Ok((report, small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::rdqm::build_meixner;

    #[test]
    fn sturm_count_on_diagonal() {
        let f = |v: i64| BigFloat::from_i64(v, 128);
        let diag = vec![f(3), f(1), f(2)];
        let off = vec![f(0), f(0)];
        assert_eq!(sturm_count(&diag, &off, &f(0), &ten_pow_neg(40, 128)), 0);
        assert_eq!(sturm_count(&diag, &off, &BigFloat::parse("2.5", 128).unwrap(), &ten_pow_neg(40, 128)), 2);
    }

    #[test]
    fn two_by_two_eigenvalues() {
        // [[2, -1], [-1, 2]] has eigenvalues 1 and 3.
        let f = |v: i64| BigFloat::from_i64(v, 256);
        let pot = Potentials::new(
            crate::grid::GridFn::new(vec![f(1), f(1), f(1)]),
            crate::grid::GridFn::new(vec![f(1), f(1), f(1)]),
        )
        .unwrap();
        let ev = lowest_eigenvalues(&pot, &f(0), 2, 2).unwrap();
        assert!((&ev[0] - &f(1)).abs() < ten_pow_neg(40, 256));
        assert!((&ev[1] - &f(3)).abs() < ten_pow_neg(40, 256));
    }

    #[test]
    fn undeformed_and_isospectral_spectra() {
        let m = build_meixner(&int(2), &rat(1, 3), 2, 70, 256).unwrap();
        let tol = ten_pow_neg(8, 256);
        let sens = ten_pow_neg(9, 256);
        let plain = m.index_set(&[], &[]).unwrap();
        let (r, _) = spectrum_check(&m, &plain, 60, 4, &tol, &sens).unwrap();
        assert!(r.pass, "{r:?}");
        let virt = m.index_set(&[rat(-3, 5)], &[]).unwrap();
        let (r, _) = spectrum_check(&m, &virt, 60, 4, &tol, &sens).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
