//! Discrete quantum mechanics with real shifts on the semi-infinite lattice `x = 0, 1, 2, …`.
//!
//! The pipeline runs in [`BigFloat`] because the ground state carries square roots of
//! rationals. Every grid quantity keeps its own valid window; reaching past it is an error.

mod deform;
mod export;
mod pipeline;
mod replay;
mod spectrum;

pub use deform::{
    deformed_eigenfunction, deformed_potentials_bd, eigen_closed_form, intermediate_eigenfunction,
    positivity, sign_conjecture_check, sign_factor, sign_identity_check, two_path_compare_rdqm, Positivity,
};
pub use export::{grid_csv, spectrum_csv};
pub use pipeline::{run, RdqmConfig, RdqmRun};
pub use replay::{darboux_chain, darboux_step_replay, RadicalProduct, Sym};
pub use spectrum::{lowest_eigenvalues, spectrum_check};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::BigFloat;
use crate::grid::GridFn;
use crate::index_set::IndexSet;

/// `10^{-k}` at the given precision.
pub(crate) fn ten_pow_neg(k: usize, precision: usize) -> BigFloat {
    let den = num_traits::pow(num_bigint::BigInt::from(10), k);
    BigFloat::from_rational(&BigRational::new(1.into(), den), precision)
}

/// Residual bound `10^{-(precision/4)}` for eigen and seed equations.
pub fn residual_tolerance(precision: usize) -> BigFloat {
    ten_pow_neg(precision / 4, precision)
}

/// Potential pair `(B, D)` sampled on `{0, …, len-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potentials {
    pub b: GridFn<BigFloat>,
    pub d: GridFn<BigFloat>,
}

impl Potentials {
    pub fn new(b: GridFn<BigFloat>, d: GridFn<BigFloat>) -> Result<Self> {
        if b.len() != d.len() {
            return Err(Error::InvalidParameter("B and D need the same window".into()));
        }
        Ok(Self { b, d })
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `√(B(x)D(x+1))`, the magnitude of the off-diagonal entry.
    pub fn off_diagonal(&self, x: usize) -> Result<BigFloat> {
        let p = self.b.at(x)? * self.d.at(x + 1)?;
        if p.is_negative() {
            return Err(Error::NegativeRadicand { what: "B(x)D(x+1)".into(), x });
        }
        Ok(p.sqrt())
    }

    /// `(Hφ)(x) + shift·φ(x)` for every `x` whose row fits inside both windows.
    pub fn apply(&self, phi: &GridFn<BigFloat>, shift: &BigFloat) -> Result<GridFn<BigFloat>> {
        let rows = phi.len().min(self.len()).saturating_sub(1);
        let mut out = Vec::with_capacity(rows);
        for x in 0..rows {
            let v = &phi.values()[x];
            let mut acc = &(&(self.b.at(x)? + self.d.at(x)?) + shift) * v;
            acc = &acc - &(&self.off_diagonal(x)? * &phi.values()[x + 1]);
            if x > 0 {
                acc = &acc - &(&self.off_diagonal(x - 1)? * &phi.values()[x - 1]);
            }
            out.push(acc);
        }
        Ok(GridFn::new(out))
    }

    /// `‖(H + shift - E)φ‖∞ / ‖φ‖∞` over the rows of [`Potentials::apply`].
    pub fn residual(&self, phi: &GridFn<BigFloat>, energy: &BigFloat, shift: &BigFloat) -> Result<BigFloat> {
        let h = self.apply(phi, shift)?;
        let p = phi.values()[0].precision();
        let mut num = BigFloat::zero(p);
        let mut den = BigFloat::zero(p);
        for (x, hv) in h.values().iter().enumerate() {
            let v = &phi.values()[x];
            num = num.max((hv - &(energy * v)).abs());
            den = den.max(v.abs());
        }
        if den.is_zero() {
            return Err(Error::InvalidParameter("residual of the zero function".into()));
        }
        Ok(&num / &den)
    }

    /// Entries `(diag, off)` of the `n × n` truncation; `off[x]` couples `x` and `x+1`.
    pub fn truncated(&self, n: usize, shift: &BigFloat) -> Result<(Vec<BigFloat>, Vec<BigFloat>)> {
        if n > self.len().saturating_sub(1) {
            return Err(Error::WindowUnderflow { required: n + 1, available: self.len() });
        }
        let diag = (0..n).map(|x| &(self.b.values()[x].clone() + self.d.values()[x].clone()) + shift).collect();
        let off = (0..n.saturating_sub(1)).map(|x| self.off_diagonal(x).map(|o| -o)).collect::<Result<_>>()?;
        Ok((diag, off))
    }
}

/// Which kind of state a seed is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedLabel {
    Virtual(usize),
    Eigen(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub label: SeedLabel,
    pub energy: BigFloat,
    pub values: GridFn<BigFloat>,
}

/// Meixner system: `B(x) = c(x+β)/(1-c)`, `D(x) = x/(1-c)`, `E_n = n`.
#[derive(Clone, Debug)]
pub struct RdqmModel {
    beta: BigRational,
    c: BigRational,
    precision: usize,
    x_max: usize,
    pot: Potentials,
    eigen: Vec<GridFn<BigFloat>>,
    residuals: Vec<BigFloat>,
}

impl RdqmModel {
    pub fn b_exact(&self, x: i64) -> BigRational {
        &self.c * (BigRational::from_integer(x.into()) + &self.beta) / (BigRational::one() - &self.c)
    }

    pub fn d_exact(&self, x: i64) -> BigRational {
        BigRational::from_integer(x.into()) / (BigRational::one() - &self.c)
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn x_max(&self) -> usize {
        self.x_max
    }

    pub fn n_max(&self) -> usize {
        self.eigen.len() - 1
    }

    /// `B` and `D` on `{0, …, x_max+1}`.
    pub fn potentials(&self) -> &Potentials {
        &self.pot
    }

    pub fn energy(&self, n: usize) -> BigFloat {
        BigFloat::from_i64(n as i64, self.precision)
    }

    /// `φ_n` on `{0, …, x_max}` with `φ_n(0) = 1`.
    pub fn eigenstate(&self, n: usize) -> Result<&GridFn<BigFloat>> {
        self.eigen
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("eigenstate {n} beyond n_max = {}", self.n_max())))
    }

    /// Relative residuals of the eigen equation, one per `n`, measured at construction.
    pub fn residuals(&self) -> &[BigFloat] {
        &self.residuals
    }

    /// Same parameters on a different window.
    pub fn resized(&self, x_max: usize) -> Result<Self> {
        build_meixner(&self.beta, &self.c, self.n_max(), x_max, self.precision)
    }

    /// Solution of `(H - Ẽ)ψ = 0` with `ψ(0) = 1`, from the three-term recurrence.
    ///
    /// Virtual seeds need `Ẽ < 0`; other energies are accepted for cross-checks.
    pub fn solve_seed_at_energy(&self, e: &BigFloat) -> Result<GridFn<BigFloat>> {
        let p = self.precision;
        let len = self.x_max + 1;
        let mut psi = vec![BigFloat::one(p)];
        for x in 0..len - 1 {
            let s = self.pot.off_diagonal(x)?;
            if s.is_zero() {
                return Err(Error::SingularDeformation { what: "√(B(x)D(x+1))".into(), x });
            }
            let mut t = &(&(self.pot.b.values()[x].clone() + self.pot.d.values()[x].clone()) - e) * &psi[x];
            if x > 0 {
                t = &t - &(&self.pot.off_diagonal(x - 1)? * &psi[x - 1]);
            }
            psi.push(&t / &s);
        }
        let psi = GridFn::new(psi).with_energy(e.clone());
        let r = self.pot.residual(&psi, e, &BigFloat::zero(p))?;
        if r > residual_tolerance(p) {
            return Err(Error::Verification(format!("seed residual {} at energy {}", r.to_sci_string(6), e.to_sci_string(6))));
        }
        Ok(psi)
    }

    /// Index set with virtual energies `ev` (labels `0, 1, …`) and deleted eigenstates `de`.
    ///
    /// Virtual energies must be negative and strictly decreasing in label order.
    pub fn index_set(&self, ev: &[BigRational], de: &[usize]) -> Result<IndexSet<BigRational>> {
        if let Some(e) = ev.iter().find(|e| !e.is_negative()) {
            return Err(Error::InvalidParameter(format!("virtual energy {e} is not negative")));
        }
        if ev.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameter("virtual energies must decrease strictly with the label".into()));
        }
        if let Some(n) = de.iter().find(|&&n| n > self.n_max()) {
            return Err(Error::InvalidParameter(format!("deleted state {n} beyond n_max = {}", self.n_max())));
        }
        let ee = de.iter().map(|&n| BigRational::from_integer((n as i64).into())).collect();
        IndexSet::new((0..ev.len()).collect(), de.to_vec(), ev.to_vec(), ee)
    }

    /// Seeds in index-set order, virtual ones first. Virtual seeds must have a definite sign.
    pub fn seeds(&self, set: &IndexSet<BigRational>) -> Result<Vec<Seed>> {
        let mut out = Vec::with_capacity(set.m());
        for (v, e) in set.dv.iter().zip(&set.ev) {
            let energy = BigFloat::from_rational(e, self.precision);
            let values = self.solve_seed_at_energy(&energy)?;
            if !values.has_definite_sign() {
                return Err(Error::AssumptionViolation(format!("virtual seed {v} changes sign on the window")));
            }
            out.push(Seed { label: SeedLabel::Virtual(*v), energy, values });
        }
        for &n in &set.de {
            out.push(Seed { label: SeedLabel::Eigen(n), energy: self.energy(n), values: self.eigenstate(n)?.clone() });
        }
        Ok(out)
    }
}

/// Terminating sum `P_n(x) = Σ_k (-n)_k (-x)_k / ((β)_k k!) · (1 - 1/c)^k`, so `P_n(0) = 1`.
fn meixner_poly(n: usize, x: usize, beta: &BigRational, c: &BigRational) -> BigRational {
    let z = BigRational::one() - c.recip();
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n.min(x) {
        let k_r = BigRational::from_integer((k as i64).into());
        let num = (&k_r - BigRational::from_integer((n as i64).into())) * (&k_r - BigRational::from_integer((x as i64).into()));
        let den = (beta + &k_r) * (&k_r + BigRational::one());
        term = term * num / den * &z;
        sum += &term;
    }
    sum
}

pub fn build_meixner(beta: &BigRational, c: &BigRational, n_max: usize, x_max: usize, precision: usize) -> Result<RdqmModel> {
    if !beta.is_positive() {
        return Err(Error::InvalidParameter(format!("β = {beta} must be positive")));
    }
    if !c.is_positive() || *c >= BigRational::one() {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (0, 1)")));
    }
    if x_max < 2 {
        return Err(Error::InvalidParameter("window needs x_max ≥ 2".into()));
    }
    let one_c = BigRational::one() - c;
    let b = GridFn::from_fn(x_max + 2, |x| {
        BigFloat::from_rational(&(c * (BigRational::from_integer((x as i64).into()) + beta) / &one_c), precision)
    });
    let d = GridFn::from_fn(x_max + 2, |x| BigFloat::from_rational(&(BigRational::from_integer((x as i64).into()) / &one_c), precision));
    let pot = Potentials::new(b, d)?;

    let mut ground_sq = vec![BigRational::one()];
    for x in 0..x_max {
        let next = &ground_sq[x] * c * (beta + BigRational::from_integer((x as i64).into())) / BigRational::from_integer((x as i64 + 1).into());
        ground_sq.push(next);
    }
    let ground: Vec<BigFloat> = ground_sq.iter().map(|q| BigFloat::from_rational(q, precision).sqrt()).collect();

    let tol = residual_tolerance(precision);
    let zero = BigFloat::zero(precision);
    let mut eigen = Vec::with_capacity(n_max + 1);
    let mut residuals = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let energy = BigFloat::from_i64(n as i64, precision);
        let phi = GridFn::from_fn(x_max + 1, |x| {
            let p = meixner_poly(n, x, beta, c);
            if p.is_zero() {
                BigFloat::zero(precision)
            } else {
                &BigFloat::from_rational(&p, precision) * &ground[x]
            }
        })
        .with_energy(energy.clone());
        let r = pot.residual(&phi, &energy, &zero)?;
        if r > tol {
            return Err(Error::Verification(format!("eigenstate {n} residual {}", r.to_sci_string(6))));
        }
        eigen.push(phi);
        residuals.push(r);
    }
    Ok(RdqmModel { beta: beta.clone(), c: c.clone(), precision, x_max, pot, eigen, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn model() -> RdqmModel {
        build_meixner(&int(2), &rat(1, 3), 6, 40, 256).unwrap()
    }

    #[test]
    fn normalization_and_residuals() {
        let m = model();
        let tol = residual_tolerance(256);
        for n in 0..=6 {
            assert_eq!(m.eigenstate(n).unwrap().values()[0], BigFloat::one(256));
            assert!(m.residuals()[n] <= tol);
        }
        assert!(m.energy(0) < m.energy(1));
    }

    #[test]
    fn ground_state_is_annihilated() {
        let m = model();
        let zero = BigFloat::zero(256);
        let h = m.potentials().apply(m.eigenstate(0).unwrap(), &zero).unwrap();
        let bound = residual_tolerance(256);
        assert!(h.values().iter().all(|v| v.abs() <= bound));
    }

    #[test]
    fn first_excited_state_closed_form() {
        // β = 2, c = 1/3: P_1(x) = 1 - x.
        let m = model();
        let phi1 = m.eigenstate(1).unwrap();
        let phi0 = m.eigenstate(0).unwrap();
        for x in 0..10 {
            let expect = &phi0.values()[x] * &BigFloat::from_i64(1 - x as i64, 256);
            assert!(phi1.values()[x].rel_diff(&expect) < ten_pow_neg(70, 256));
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(build_meixner(&int(0), &rat(1, 3), 2, 10, 128).is_err());
        assert!(build_meixner(&int(2), &int(1), 2, 10, 128).is_err());
        assert!(build_meixner(&int(2), &rat(-1, 3), 2, 10, 128).is_err());
    }

    #[test]
    fn seed_row_zero_and_eigen_cross_check() {
        let m = model();
        let e = BigFloat::parse("-0.6", 256).unwrap();
        let psi = m.solve_seed_at_energy(&e).unwrap();
        let row0 = &(&m.potentials().b.values()[0] - &e) / &m.potentials().off_diagonal(0).unwrap();
        assert!(psi.values()[1].rel_diff(&row0) < ten_pow_neg(70, 256));
        assert!(psi.has_definite_sign());

        let phi3 = m.solve_seed_at_energy(&m.energy(3)).unwrap();
        for x in 0..15 {
            assert!(phi3.values()[x].rel_diff(&m.eigenstate(3).unwrap().values()[x]) < ten_pow_neg(40, 256));
        }
    }

    #[test]
    fn distinct_virtual_energies_are_independent() {
        let m = model();
        let a = m.solve_seed_at_energy(&BigFloat::parse("-0.6", 256).unwrap()).unwrap();
        let b = m.solve_seed_at_energy(&BigFloat::parse("-1.7", 256).unwrap()).unwrap();
        let w = crate::det::casoratian_real_grid(&[a, b], 0).unwrap();
        assert!(w.values().iter().all(|v| !v.is_zero()));
    }

    #[test]
    fn index_set_validation() {
        let m = model();
        assert!(m.index_set(&[rat(-3, 5), rat(-17, 10)], &[1, 2]).is_ok());
        assert!(m.index_set(&[rat(-17, 10), rat(-3, 5)], &[]).is_err());
        assert!(m.index_set(&[rat(1, 2)], &[]).is_err());
        assert!(m.index_set(&[], &[9]).is_err());
    }

    #[test]
    fn factorization_reproduces_matrix() {
        // A = √B - e^∂ √D as an n×n matrix; Aᵀ A must equal the tri-diagonal H to 2^{-bits/2}.
        let m = model();
        let n = 12;
        let pot = m.potentials();
        let zero = BigFloat::zero(256);
        let mut a = vec![vec![zero.clone(); n]; n];
        for x in 0..n {
            a[x][x] = pot.b.values()[x].sqrt();
            if x + 1 < n {
                a[x][x + 1] = -pot.d.values()[x + 1].sqrt();
            }
        }
        let (diag, off) = pot.truncated(n, &zero).unwrap();
        let tol = BigFloat::one(256) / BigFloat::from_i64(2, 256).powi(256 / 2);
        for x in 0..n {
            for y in 0..n {
                let mut s = zero.clone();
                for z in 0..n {
                    s = &s + &(&a[z][x] * &a[z][y]);
                }
                let h = if x == y {
                    diag[x].clone()
                } else if y == x + 1 {
                    off[x].clone()
                } else if x == y + 1 {
                    off[y].clone()
                } else {
                    zero.clone()
                };
                let scale = s.abs().max(h.abs());
                assert!(scale.is_zero() || &(&s - &h).abs() / &scale <= tol, "entry ({x},{y})");
            }
        }
    }

    #[test]
    fn shift_matrices_are_one_sided_inverses() {
        // Truncated e^∂ has ones above the diagonal and e^{-∂} is its transpose.
        let n = 6;
        let up = |x: usize, y: usize| i32::from(y == x + 1);
        let down = |x: usize, y: usize| i32::from(x == y + 1);
        let prod = |f: &dyn Fn(usize, usize) -> i32, g: &dyn Fn(usize, usize) -> i32, x, y| (0..n).map(|z| f(x, z) * g(z, y)).sum::<i32>();
        for x in 0..n - 1 {
            for y in 0..n {
                assert_eq!(prod(&up, &down, x, y), i32::from(x == y));
            }
        }
        assert_eq!(prod(&down, &up, 0, 0), 0);
        for x in 1..n {
            assert_eq!(prod(&down, &up, x, x), 1);
        }
    }
}
