use itertools::Itertools;
use num_rational::BigRational;

use super::{RdqmModel, Potentials, Seed, SeedLabel};
use crate::det::casoratian_real_grid;
use crate::error::{Error, Result};
use crate::exact::BigFloat;
use crate::grid::GridFn;
use crate::index_set::IndexSet;
use crate::report::LabReport;

/// `ε = ∏_{i<j} sgn(E_i - E_j)`; `+1` for fewer than two energies, `0` on a tie.
pub fn sign_factor<E: PartialOrd>(energies: &[E]) -> i32 {
    let mut s = 1;
    for (i, a) in energies.iter().enumerate() {
        for b in &energies[i + 1..] {
            s *= match a.partial_cmp(b) {
                Some(std::cmp::Ordering::Greater) => 1,
                Some(std::cmp::Ordering::Less) => -1,
                _ => 0,
            };
        }
    }
    s
}

/// Real-shift Casoratian; the empty list gives ones at `precision`.
pub(crate) fn cas(fs: &[GridFn<BigFloat>], len: usize, precision: usize) -> Result<GridFn<BigFloat>> {
    if fs.is_empty() {
        return Ok(GridFn::from_fn(len, |_| BigFloat::one(precision)));
    }
    casoratian_real_grid(fs, len)
}

fn grids(seeds: &[Seed]) -> Vec<GridFn<BigFloat>> {
    seeds.iter().map(|s| s.values.clone()).collect()
}

fn energies(seeds: &[Seed]) -> Vec<BigFloat> {
    seeds.iter().map(|s| s.energy.clone()).collect()
}

fn with(seeds: &[GridFn<BigFloat>], extra: &GridFn<BigFloat>) -> Vec<GridFn<BigFloat>> {
    seeds.iter().cloned().chain(std::iter::once(extra.clone())).collect()
}

fn nonzero(w: &GridFn<BigFloat>, x: usize, what: &str) -> Result<()> {
    if w.values()[x].is_zero() {
        Err(Error::SingularDeformation { what: what.into(), x })
    } else {
        Ok(())
    }
}

/// Deformed `(B_D, D_D)` for the given seeds, with `φ_μ` the lowest surviving state.
pub fn deformed_potentials_bd_raw(pot: &Potentials, seeds: &[GridFn<BigFloat>], mu: &GridFn<BigFloat>) -> Result<Potentials> {
    let m = seeds.len();
    let w = cas(seeds, mu.len() + 1, mu.values()[0].precision())?;
    let wm = casoratian_real_grid(&with(seeds, mu), 0)?;
    let len = (wm.len().min(w.len())).saturating_sub(1).min(pot.len().saturating_sub(m + 1));
    if len < 2 {
        return Err(Error::WindowUnderflow { required: m + 3, available: pot.len() });
    }
    let (pb, pd) = (pot.b.values(), pot.d.values());
    let (wv, wmv) = (w.values(), wm.values());
    let mut b = Vec::with_capacity(len);
    let mut d = Vec::with_capacity(len);
    for x in 0..len {
        nonzero(&w, x, "W_C[seeds]")?;
        nonzero(&w, x + 1, "W_C[seeds]")?;
        nonzero(&wm, x, "W_C[seeds, φ_μ]")?;
        let s = pot.off_diagonal(x + m)?;
        b.push(&(&(&s * &wv[x]) / &wv[x + 1]) * &(&wmv[x + 1] / &wmv[x]));
        if x == 0 {
            d.push(BigFloat::zero(pd[0].precision()));
        } else {
            let p = &pb[x - 1] * &pd[x];
            if p.is_negative() {
                return Err(Error::NegativeRadicand { what: "B(x-1)D(x)".into(), x });
            }
            d.push(&(&(&p.sqrt() * &wv[x + 1]) / &wv[x]) * &(&wmv[x - 1] / &wmv[x]));
        }
    }
    Potentials::new(GridFn::new(b), GridFn::new(d))
}

/// Positivity of a deformed pair: `B_D > 0` everywhere, `D_D > 0` except `D_D(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Positivity {
    pub positive: bool,
    pub first_violation: Option<usize>,
}

pub fn positivity(pot: &Potentials) -> Positivity {
    let bad = (0..pot.len()).find(|&x| {
        let b_ok = pot.b.values()[x].is_positive();
        let d_ok = if x == 0 { pot.d.values()[0].is_zero() } else { pot.d.values()[x].is_positive() };
        !(b_ok && d_ok)
    });
    Positivity { positive: bad.is_none(), first_violation: bad }
}

pub fn deformed_potentials_bd(model: &RdqmModel, set: &IndexSet<BigRational>, seeds: &[Seed]) -> Result<(Potentials, Positivity)> {
    let pot = deformed_potentials_bd_raw(model.potentials(), &grids(seeds), model.eigenstate(set.mu())?)?;
    let pos = positivity(&pot);
    Ok((pot, pos))
}

/// `(∏_{j=1}^M B(x+j-1)D(x+j))^{1/4} / √(W(x)W(x+1))`, both roots positive.
pub(crate) fn prefactor(pot: &Potentials, w: &GridFn<BigFloat>, m: usize, x: usize) -> Result<BigFloat> {
    let p = w.values()[x].precision();
    let mut prod = BigFloat::one(p);
    for j in 1..=m {
        prod = &prod * &(&pot.b.values()[x + j - 1] * &pot.d.values()[x + j]);
    }
    if prod.is_negative() {
        return Err(Error::NegativeRadicand { what: "∏ B(x+j-1)D(x+j)".into(), x });
    }
    let ww = &w.values()[x] * &w.values()[x + 1];
    if ww.is_zero() {
        return Err(Error::SingularDeformation { what: "W_C[seeds]".into(), x });
    }
    if ww.is_negative() {
        return Err(Error::NegativeRadicand { what: "W_C[seeds](x) W_C[seeds](x+1)".into(), x });
    }
    Ok(&prod.sqrt().sqrt() / &ww.sqrt())
}

/// `(-1)^M ε (∏ B D)^{1/4} W_C[seeds, target](x) / √(W_C[seeds](x) W_C[seeds](x+1))`.
pub fn eigen_closed_form(pot: &Potentials, seeds: &[GridFn<BigFloat>], eps: i32, target: &GridFn<BigFloat>) -> Result<GridFn<BigFloat>> {
    let m = seeds.len();
    let w = cas(seeds, target.len() + 1, target.values()[0].precision())?;
    let wn = casoratian_real_grid(&with(seeds, target), 0)?;
    let len = wn.len().min(w.len() - 1).min(pot.len().saturating_sub(m));
    let sign = if (m % 2 == 0) == (eps > 0) { 1 } else { -1 };
    let mut out = Vec::with_capacity(len);
    for x in 0..len {
        let v = &prefactor(pot, &w, m, x)? * &wn.values()[x];
        out.push(if sign > 0 { v } else { -v });
    }
    let mut g = GridFn::new(out);
    if let Some(e) = target.energy() {
        g = g.with_energy(e.clone());
    }
    Ok(g)
}

fn check_state(model: &RdqmModel, set: &IndexSet<BigRational>, n: usize) -> Result<()> {
    if set.is_deleted(n) {
        return Err(Error::StateDeleted(n));
    }
    model.eigenstate(n).map(|_| ())
}

/// `φ_{D n}` in one shot from all seeds.
pub fn deformed_eigenfunction(model: &RdqmModel, set: &IndexSet<BigRational>, seeds: &[Seed], n: usize) -> Result<GridFn<BigFloat>> {
    check_state(model, set, n)?;
    eigen_closed_form(model.potentials(), &grids(seeds), sign_factor(&energies(seeds)), model.eigenstate(n)?)
}

fn split(seeds: &[Seed]) -> (Vec<Seed>, Vec<Seed>) {
    seeds.iter().cloned().partition(|s| matches!(s.label, SeedLabel::Virtual(_)))
}

/// `φ_{D_v D_e n}`: delete `D_e` from the system already deformed by the virtual seeds.
pub fn intermediate_eigenfunction(model: &RdqmModel, set: &IndexSet<BigRational>, seeds: &[Seed], n: usize) -> Result<GridFn<BigFloat>> {
    check_state(model, set, n)?;
    let (virt, eig) = split(seeds);
    let vg = grids(&virt);
    let eps_v = sign_factor(&energies(&virt));
    let pot = model.potentials();
    let pot_v = deformed_potentials_bd_raw(pot, &vg, model.eigenstate(0)?)?;
    let lift = |k: usize| eigen_closed_form(pot, &vg, eps_v, model.eigenstate(k)?);
    let deleted = eig
        .iter()
        .map(|s| match s.label {
            SeedLabel::Eigen(k) => lift(k),
            SeedLabel::Virtual(_) => unreachable!("partitioned"),
        })
        .collect::<Result<Vec<_>>>()?;
    eigen_closed_form(&pot_v, &deleted, sign_factor(&energies(&eig)), &lift(n)?)
}

/// For every ordering of the virtual and of the eigen energies, checks
/// `ε_D = (-1)^{lm} ε_{D_v} ε_{D_e}`. Returns `(holding, total)`.
pub fn sign_identity_check<E: PartialOrd + Clone>(ev: &[E], ee: &[E]) -> (usize, usize) {
    let (l, m) = (ev.len(), ee.len());
    let parity = if (l * m) % 2 == 0 { 1 } else { -1 };
    let mut ok = 0;
    let mut total = 0;
    for pv in ev.iter().cloned().permutations(l) {
        for pe in ee.iter().cloned().permutations(m) {
            let all: Vec<E> = pv.iter().chain(&pe).cloned().collect();
            total += 1;
            if sign_factor(&all) == parity * sign_factor(&pv) * sign_factor(&pe) {
                ok += 1;
            }
        }
    }
    (ok, total)
}

/// Whether `sgn W_C[seeds](x) = ε_D` on the whole window; also the first failing `x`.
pub fn sign_conjecture_check(seeds: &[Seed]) -> Result<(bool, Option<usize>)> {
    let eps = sign_factor(&energies(seeds));
    if seeds.is_empty() {
        return Ok((true, None));
    }
    let w = casoratian_real_grid(&grids(seeds), 0)?;
    let bad = w.values().iter().position(|v| v.signum() != eps);
    Ok((bad.is_none(), bad))
}

/// Largest pointwise relative deviation on `{0, …, x_cmp}` (or the shorter window).
pub(crate) fn max_rel_dev(a: &GridFn<BigFloat>, b: &GridFn<BigFloat>, x_cmp: usize) -> Result<(BigFloat, usize)> {
    let n = a.len().min(b.len()).min(x_cmp + 1);
    if n == 0 {
        return Err(Error::WindowUnderflow { required: 1, available: 0 });
    }
    let dev = (0..n)
        .map(|x| a.values()[x].rel_diff(&b.values()[x]))
        .reduce(BigFloat::max)
        .expect("nonempty");
    Ok((dev, n))
}

/// One-shot `φ_{D n}` against `φ_{D_v D_e n}` on `x ≤ x_cmp`, with the sign identity
/// checked over all orderings. `flip_epsilon` negates `ε_D` in the one-shot path.
pub fn two_path_compare_rdqm(
    model: &RdqmModel,
    set: &IndexSet<BigRational>,
    seeds: &[Seed],
    n: usize,
    x_cmp: usize,
    tol: &BigFloat,
    flip_epsilon: bool,
) -> Result<LabReport> {
    let mut one_shot = deformed_eigenfunction(model, set, seeds, n)?;
    if flip_epsilon {
        one_shot = one_shot.map(|v| -v);
    }
    let staged = intermediate_eigenfunction(model, set, seeds, n)?;
    let (dev, points) = max_rel_dev(&one_shot, &staged, x_cmp)?;
    let (ok, total) = sign_identity_check(&set.ev, &set.ee);
    let pass = dev <= *tol && ok == total;
    let params = [
        ("dv", crate::report::list(&set.ev)),
        ("de", crate::report::list(&set.de)),
        ("n", n.to_string()),
        ("x_max", (points - 1).to_string()),
    ];
    Ok(LabReport::new(
        "rdqm-two-path",
        &params,
        format!("max relative deviation {}", dev.to_sci_string(6)),
        format!("tolerance {}", tol.to_sci_string(3)),
        pass,
    )
    .with_detail(format!(
        "sign identity ε_D = (-1)^(lm) ε_Dv ε_De: {ok}/{total} orderings; φ_Dn(0) = {}",
        one_shot.values()[0].to_sci_string(12)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::rdqm::{build_meixner, residual_tolerance, ten_pow_neg};

    fn model() -> RdqmModel {
        build_meixner(&int(2), &rat(1, 3), 6, 60, 256).unwrap()
    }

    #[test]
    fn sign_factor_examples() {
        assert_eq!(sign_factor(&[5]), 1);
        assert_eq!(sign_factor::<i32>(&[]), 1);
        assert_eq!(sign_factor(&[3, -1, 2]), -1);
        for m in 0..6 {
            let asc: Vec<i32> = (0..m).collect();
            let expect = if (m * (m - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(sign_factor(&asc), expect);
        }
        let e: Vec<BigRational> = ["-0.6", "-1.7", "1", "2"].iter().map(|s| crate::exact::rational::parse_rational(s).unwrap()).collect();
        assert_eq!(sign_factor(&e), -1);
    }

    #[test]
    fn sign_identity_small_case() {
        assert_eq!(sign_factor(&[-1, 3]), -1);
        assert_eq!(sign_identity_check(&[-1], &[3]), (1, 1));
        assert_eq!(sign_identity_check(&[-6, -17], &[1, 2]), (4, 4));
        assert_eq!(sign_identity_check(&[-1, -2, -3], &[1, 4]), (12, 12));
    }

    #[test]
    fn no_seeds_leave_potentials_alone() {
        let m = model();
        let pot = deformed_potentials_bd_raw(m.potentials(), &[], m.eigenstate(0).unwrap()).unwrap();
        let tol = ten_pow_neg(70, 256);
        for x in 0..pot.len() {
            assert!(pot.b.values()[x].rel_diff(&m.potentials().b.values()[x]) < tol);
            assert!(pot.d.values()[x].rel_diff(&m.potentials().d.values()[x]) < tol);
        }
        let set = m.index_set(&[], &[]).unwrap();
        let phi = deformed_eigenfunction(&m, &set, &[], 3).unwrap();
        assert_eq!(phi.values()[..10], m.eigenstate(3).unwrap().values()[..10]);
    }

    #[test]
    fn deleting_ground_state() {
        let m = model();
        let set = m.index_set(&[], &[0]).unwrap();
        let seeds = m.seeds(&set).unwrap();
        let (pot, pos) = deformed_potentials_bd(&m, &set, &seeds).unwrap();
        assert!(pot.d.values()[0].is_zero());
        assert!(pos.positive);
        let phi = deformed_eigenfunction(&m, &set, &seeds, 1).unwrap();
        let r = pot.residual(&phi, &m.energy(1), &m.energy(1)).unwrap();
        assert!(r < residual_tolerance(256), "residual {}", r.to_sci_string(5));
    }

    #[test]
    fn mixed_deformation_residuals_and_positivity() {
        let m = model();
        let set = m.index_set(&[rat(-3, 5), rat(-17, 10)], &[1, 2]).unwrap();
        let seeds = m.seeds(&set).unwrap();
        let (pot, pos) = deformed_potentials_bd(&m, &set, &seeds).unwrap();
        assert!(pos.positive, "{pos:?}");
        assert_eq!(pot.len(), m.x_max() - 4);
        for n in [0, 3, 4, 5] {
            let phi = deformed_eigenfunction(&m, &set, &seeds, n).unwrap();
            let r = pot.residual(&phi, &m.energy(n), &m.energy(0)).unwrap();
            assert!(r < residual_tolerance(256), "n = {n}: {}", r.to_sci_string(5));
        }
        assert_eq!(sign_conjecture_check(&seeds).unwrap(), (true, None));
    }

    #[test]
    fn deleted_state_is_rejected() {
        let m = model();
        let set = m.index_set(&[], &[1, 2]).unwrap();
        let seeds = m.seeds(&set).unwrap();
        assert_eq!(deformed_eigenfunction(&m, &set, &seeds, 2), Err(Error::StateDeleted(2)));
    }

    #[test]
    fn negative_radicand_is_reported() {
        // Deleting only φ_1 violates Krein-Adler: the Casoratian changes sign.
        let m = model();
        let set = m.index_set(&[], &[1]).unwrap();
        let seeds = m.seeds(&set).unwrap();
        let err = deformed_eigenfunction(&m, &set, &seeds, 0).unwrap_err();
        assert!(matches!(err, Error::NegativeRadicand { .. } | Error::SingularDeformation { .. }), "{err:?}");
    }

    #[test]
    fn permuting_seeds_keeps_potentials_and_tracks_epsilon() {
        let m = model();
        let set = m.index_set(&[rat(-3, 5), rat(-17, 10)], &[1, 2]).unwrap();
        let seeds = m.seeds(&set).unwrap();
        let (base, _) = deformed_potentials_bd(&m, &set, &seeds).unwrap();
        let base_phi = deformed_eigenfunction(&m, &set, &seeds, 0).unwrap();
        let tol = ten_pow_neg(40, 256);
        for perm in seeds.iter().cloned().permutations(4).step_by(5) {
            let (pot, _) = deformed_potentials_bd(&m, &set, &perm).unwrap();
            for x in 0..40 {
                assert!(pot.b.values()[x].rel_diff(&base.b.values()[x]) < tol);
                assert!(pot.d.values()[x].rel_diff(&base.d.values()[x]) < tol);
            }
            // The Casoratian and ε_D flip together, so φ_D n is unchanged.
            let phi = deformed_eigenfunction(&m, &set, &perm, 0).unwrap();
            assert!(phi.values()[5].rel_diff(&base_phi.values()[5]) < tol);
            let w = casoratian_real_grid(&grids(&perm), 0).unwrap();
            assert_eq!(w.values()[0].signum(), sign_factor(&energies(&perm)));
        }
    }
}
