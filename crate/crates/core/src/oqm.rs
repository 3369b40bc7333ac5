//! Multi-step Darboux transformations of ordinary quantum mechanics, `H = p² + U(x)`,
//! on the harmonic oscillator, where every state is an exp-class function.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::det::wronskian_exp;
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{ExpPoly, ExpPolyRatio, Gq, Poly, RationalFn};
use crate::index_set::IndexSet;
use crate::report::{list, LabReport};

#[derive(Clone, Debug, PartialEq)]
pub struct OqmModel {
    pub u: Poly,
    /// `(E_n, φ_n)` for `n = 0, 1, …`.
    pub eigen: Vec<(BigRational, ExpPoly)>,
    /// `(Ẽ_v, φ̃_v)` for `v = 0, 1, …`.
    pub aux: Vec<(BigRational, ExpPoly)>,
}

/// `H_{n+1} = 2x H_n + 2 s n H_{n-1}`; `s = -1` gives Hermite, `s = +1` its imaginary-argument twin.
fn hermite_like(count: usize, s: i64) -> Vec<Poly> {
    let mut out = vec![Poly::from_ints(&[1]), Poly::from_ints(&[0, 2])];
    while out.len() < count {
        let n = out.len() - 1;
        let next = &(&Poly::from_ints(&[0, 2]) * &out[n]) + &out[n - 1].scale(&Gq::from_int(2 * s * n as i64));
        out.push(next);
    }
    out.truncate(count);
    out
}

impl OqmModel {
    /// Oscillator with `U = x² - 1`, so that `E_n = 2n` and `Ẽ_v = -2v - 2`.
    /// Every stored pair is verified before the model is returned.
    pub fn harmonic(n_max: usize, v_max: usize) -> Result<Self> {
        let u = Poly::from_ints(&[-1, 0, 1]);
        let eigen = hermite_like(n_max + 1, -1)
            .into_iter()
            .enumerate()
            .map(|(n, h)| (int(2 * n as i64), ExpPoly::new(h, int(-1), int(0))))
            .collect::<Vec<_>>();
        let aux = hermite_like(v_max + 1, 1)
            .into_iter()
            .enumerate()
            .map(|(v, h)| (int(-2 * v as i64 - 2), ExpPoly::new(h, int(1), int(0))))
            .collect::<Vec<_>>();
        let ur = RationalFn::from_poly(u.clone());
        for (e, f) in eigen.iter().chain(&aux) {
            if !verify_schrodinger(&ur, &f.to_ratio(), e) {
                return Err(Error::Verification(format!("stored state {f} fails at energy {e}")));
            }
        }
        Ok(Self { u, eigen, aux })
    }

    pub fn eigenstate(&self, n: usize) -> Result<&(BigRational, ExpPoly)> {
        self.eigen.get(n).ok_or_else(|| Error::InvalidParameter(format!("eigenstate {n} not built")))
    }

    pub fn aux_state(&self, v: usize) -> Result<&(BigRational, ExpPoly)> {
        self.aux.get(v).ok_or_else(|| Error::InvalidParameter(format!("virtual state {v} not built")))
    }

    pub fn index_set(&self, dv: &[usize], de: &[usize]) -> Result<IndexSet<BigRational>> {
        let ev = dv.iter().map(|&v| Ok(self.aux_state(v)?.0.clone())).collect::<Result<Vec<_>>>()?;
        let ee = de.iter().map(|&e| Ok(self.eigenstate(e)?.0.clone())).collect::<Result<Vec<_>>>()?;
        IndexSet::new(dv.to_vec(), de.to_vec(), ev, ee)
    }

    /// Seed functions `ψ_j`, virtual labels first.
    pub fn seeds(&self, set: &IndexSet<BigRational>) -> Result<Vec<ExpPoly>> {
        let mut out = Vec::with_capacity(set.m());
        for &v in &set.dv {
            out.push(self.aux_state(v)?.1.clone());
        }
        for &e in &set.de {
            out.push(self.eigenstate(e)?.1.clone());
        }
        Ok(out)
    }

    pub fn deformed_potential(&self, set: &IndexSet<BigRational>) -> Result<RationalFn> {
        deformed_potential(&self.u, &self.seeds(set)?)
    }

    /// `φ_{D n} = W[ψ₁, …, ψ_M, φ_n] / W[ψ₁, …, ψ_M]`.
    pub fn deformed_eigenfunction(&self, set: &IndexSet<BigRational>, n: usize) -> Result<ExpPolyRatio> {
        if set.is_deleted(n) {
            return Err(Error::StateDeleted(n));
        }
        let seeds = self.seeds(set)?;
        quotient_of_wronskians(&seeds, &self.eigenstate(n)?.1)
    }

    /// Two-step form: delete `D_e` from the virtual-state deformed system,
    /// `W[φ_{D_v e₁}, …, φ_{D_v e_{M_e}}, φ_{D_v n}] / W[φ_{D_v e₁}, …]`.
    pub fn staged_eigenfunction(&self, set: &IndexSet<BigRational>, n: usize) -> Result<ExpPolyRatio> {
        if set.is_deleted(n) {
            return Err(Error::StateDeleted(n));
        }
        let virt: Vec<ExpPoly> = set.dv.iter().map(|&v| Ok(self.aux_state(v)?.1.clone())).collect::<Result<_>>()?;
        let mut inter = set
            .de
            .iter()
            .map(|&e| quotient_of_wronskians(&virt, &self.eigenstate(e)?.1))
            .collect::<Result<Vec<_>>>()?;
        let den = wronskian_exp(&inter);
        inter.push(quotient_of_wronskians(&virt, &self.eigenstate(n)?.1)?);
        let num = wronskian_exp(&inter);
        if den.is_zero() {
            return Err(Error::LinearDependence("intermediate Wronskian vanishes".into()));
        }
        num.div(&den)
    }
}

fn quotient_of_wronskians(seeds: &[ExpPoly], f: &ExpPoly) -> Result<ExpPolyRatio> {
    let den = wronskian_exp(seeds);
    if den.is_zero() {
        return Err(Error::LinearDependence("seed Wronskian vanishes".into()));
    }
    let mut with = seeds.to_vec();
    with.push(f.clone());
    ExpPolyRatio::quotient(&wronskian_exp(&with), &den)
}

/// `-φ'' + Uφ - Eφ = 0`, exactly.
pub fn verify_schrodinger(u: &RationalFn, phi: &ExpPolyRatio, e: &BigRational) -> bool {
    let d2 = phi.derivative().derivative();
    let base = phi.base();
    let residual = &(&(u * base) - &base.scale(&Gq::real(e.clone()))) - d2.base();
    residual.is_zero()
}

/// `U_D = U - 2 (log|W|)''` with `W = W[seeds] = P·exp((a x² + b x)/2)`, so that
/// `(log|W|)'' = (P''P - P'²)/P² + a`.
pub fn deformed_potential(u: &Poly, seeds: &[ExpPoly]) -> Result<RationalFn> {
    let w = wronskian_exp(seeds);
    if w.is_zero() {
        return Err(Error::LinearDependence("seed Wronskian vanishes".into()));
    }
    let p = w.base();
    let (d1, d2) = (p.derivative(), p.derivative().derivative());
    let log2 = &RationalFn::new(&(&d2 * p) - &(&d1 * &d1), p * p)? + &RationalFn::from_poly(Poly::constant(Gq::real(w.a().clone())));
    Ok(&RationalFn::from_poly(u.clone()) - &log2.scale(&Gq::from_int(2)))
}

/// `∏_j (m - e_j) ≥ 0` for all `m ≥ 0`. Beyond `max(e)` every factor is positive,
/// so `m ≤ max(e) + 1` suffices.
pub fn krein_adler(de: &[usize]) -> bool {
    let top = de.iter().copied().max().map_or(0, |m| m + 1);
    (0..=top).all(|m| de.iter().map(|&e| m as i64 - e as i64).fold(1i64, |acc, f| acc.signum() * f.signum()) >= 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    OneShot,
    Staged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// `(n, degree of the polynomial part of φ_{D n})`.
    pub degrees: Vec<(usize, usize)>,
    pub missing: Vec<usize>,
    /// `Some(ℓ)` when the missing set is `{0, …, ℓ-1}` (case 1), `None` otherwise (case 2).
    pub prefix_len: Option<usize>,
}

impl Census {
    pub fn is_case1(&self) -> bool {
        self.prefix_len.is_some()
    }
}

/// Degrees of the reduced numerators of `φ_{D n}`, `n ≤ n_max`, and the degrees they skip.
pub fn degree_census(model: &OqmModel, set: &IndexSet<BigRational>, n_max: usize, path: Path) -> Result<Census> {
    let mut degrees = Vec::new();
    for n in (0..=n_max).filter(|n| !set.is_deleted(*n)) {
        let phi = match path {
            Path::OneShot => model.deformed_eigenfunction(set, n)?,
            Path::Staged => model.staged_eigenfunction(set, n)?,
        };
        let d = phi.base().num().degree().ok_or_else(|| Error::Verification(format!("φ_D{n} vanishes")))?;
        degrees.push((n, d));
    }
    let top = degrees.iter().map(|d| d.1).max().unwrap_or(0);
    let missing: Vec<usize> = (0..=top).filter(|k| !degrees.iter().any(|d| d.1 == *k)).collect();
    let prefix = missing.iter().enumerate().all(|(i, &k)| i == k);
    Ok(Census { prefix_len: prefix.then_some(missing.len()), degrees, missing })
}

/// Exact comparison of the one-shot and staged deformed eigenfunctions.
pub fn two_path_compare(model: &OqmModel, dv: &[usize], de: &[usize], n: usize) -> Result<LabReport> {
    let set = model.index_set(dv, de)?;
    let one = model.deformed_eigenfunction(&set, n)?;
    let two = model.staged_eigenfunction(&set, n)?;
    let params = [("dv", list(dv)), ("de", list(de)), ("n", n.to_string())];
    Ok(LabReport::new("oqm-two-path", &params, one.to_string(), two.to_string(), one == two))
}

/// Schrödinger check of `φ_{D n}` in the deformed potential.
pub fn schrodinger_report(model: &OqmModel, dv: &[usize], de: &[usize], n: usize) -> Result<LabReport> {
    let set = model.index_set(dv, de)?;
    let ud = model.deformed_potential(&set)?;
    let phi = model.deformed_eigenfunction(&set, n)?;
    let e = &model.eigenstate(n)?.0;
    let ok = verify_schrodinger(&ud, &phi, e);
    let params = [("dv", list(dv)), ("de", list(de)), ("n", n.to_string())];
    Ok(LabReport::new("oqm-schrodinger", &params, ud.to_string(), format!("E={e}"), ok))
}

/// Census agreement between the two paths.
pub fn census_report(model: &OqmModel, dv: &[usize], de: &[usize], n_max: usize) -> Result<LabReport> {
    let set = model.index_set(dv, de)?;
    let a = degree_census(model, &set, n_max, Path::OneShot)?;
    let b = degree_census(model, &set, n_max, Path::Staged)?;
    let show = |c: &Census| format!("missing {} case-{}", list(&c.missing), if c.is_case1() { 1 } else { 2 });
    let params = [("dv", list(dv)), ("de", list(de)), ("n_max", n_max.to_string())];
    Ok(LabReport::new("oqm-degree-census", &params, show(&a), show(&b), a == b))
}
