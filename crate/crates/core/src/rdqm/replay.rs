//! Replay of the single Darboux step `φ_{d₁…d_{s+1} n} = Â_{d₁…d_{s+1}} φ_{d₁…d_s n}`.
//!
//! The eigenfunction at level `s` is `C_s(x) K_s(x)`, where
//! `C_s = (∏_{j≤s} B(x+j-1)D(x+j))^{1/4} (W_s(x)W_s(x+1))^{-1/2}` is kept symbolic and
//! `K_s` is a grid. Each term of `Â` divided by `C_{s+1}` must leave only integer powers,
//! which are taken out of the root by `√(f²) = sgn f(0) · f(x)`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::deform::{cas, max_rel_dev, prefactor, sign_factor};
use super::{deformed_eigenfunction, RdqmModel, Potentials, Seed};
use crate::det::casoratian_real_grid;
use crate::error::{Error, Result};
use crate::exact::BigFloat;
use crate::grid::GridFn;
use crate::index_set::IndexSet;
use crate::report::LabReport;

/// A named grid quantity evaluated at `x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    B(i64),
    D(i64),
    /// `W_C[ψ₁, …, ψ_level]`; level 0 is the constant 1 and never stored.
    W { level: usize, shift: i64 },
}

impl Sym {
    fn shifted(self, k: i64) -> Self {
        match self {
            Sym::B(s) => Sym::B(s + k),
            Sym::D(s) => Sym::D(s + k),
            Sym::W { level, shift } => Sym::W { level, shift: shift + k },
        }
    }

    fn shift(self) -> i64 {
        match self {
            Sym::B(s) | Sym::D(s) | Sym::W { shift: s, .. } => s,
        }
    }
}

/// `sign · ∏ f^{q/4}` with every root positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProduct {
    pub sign: i32,
    /// Exponents in units of 1/4.
    pub factors: BTreeMap<Sym, i64>,
}

impl RadicalProduct {
    pub fn one() -> Self {
        Self { sign: 1, factors: BTreeMap::new() }
    }

    /// Multiplies in `f^{quarters/4}`. Level-0 Casoratians are dropped.
    pub fn with(mut self, f: Sym, quarters: i64) -> Self {
        if matches!(f, Sym::W { level: 0, .. }) {
            return self;
        }
        let e = self.factors.entry(f).or_insert(0);
        *e += quarters;
        if *e == 0 {
            self.factors.remove(&f);
        }
        self
    }

    /// `√a √b = √(ab)`: exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self { sign: self.sign * other.sign, factors: self.factors.clone() };
        for (&f, &q) in &other.factors {
            out = out.with(f, q);
        }
        out
    }

    pub fn recip(&self) -> Self {
        Self { sign: self.sign, factors: self.factors.iter().map(|(&f, &q)| (f, -q)).collect() }
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { sign: self.sign, factors: self.factors.iter().map(|(&f, &q)| (f.shifted(k), q)).collect() }
    }

    /// Takes every factor out of the root. Factor `f(x) = Q(x+k)` with integer power `p`
    /// becomes `sgn Q(k)^p · Q(x+k)^p`; `sign_at` supplies `sgn Q(k)`.
    pub fn externalize(&self, sign_at: impl Fn(Sym) -> Result<i32>) -> Result<(i32, Vec<(Sym, i64)>)> {
        let mut sign = self.sign;
        let mut plain = Vec::new();
        for (&f, &q) in &self.factors {
            if q % 4 != 0 {
                return Err(Error::Verification(format!("{f:?} keeps exponent {q}/4 under the root")));
            }
            let p = q / 4;
            if p % 2 != 0 {
                sign *= sign_at(f)?;
            }
            plain.push((f, p));
        }
        Ok((sign, plain))
    }
}

/// Symbolic `C_s(x)`.
fn c_level(s: usize) -> RadicalProduct {
    let mut r = RadicalProduct::one();
    for j in 1..=s as i64 {
        r = r.with(Sym::B(j - 1), 1).with(Sym::D(j), 1);
    }
    r.with(Sym::W { level: s, shift: 0 }, -2).with(Sym::W { level: s, shift: 1 }, -2)
}

/// `√B̂_{s+1}(x)`.
fn sqrt_b_hat(s: usize) -> RadicalProduct {
    let si = s as i64;
    RadicalProduct::one()
        .with(Sym::B(si), 1)
        .with(Sym::D(si + 1), 1)
        .with(Sym::W { level: s, shift: 0 }, 2)
        .with(Sym::W { level: s, shift: 1 }, -2)
        .with(Sym::W { level: s + 1, shift: 1 }, 2)
        .with(Sym::W { level: s + 1, shift: 0 }, -2)
}

/// `√D̂_{s+1}(x+1)`.
fn sqrt_d_hat_next(s: usize) -> RadicalProduct {
    RadicalProduct::one()
        .with(Sym::B(0), 1)
        .with(Sym::D(1), 1)
        .with(Sym::W { level: s, shift: 2 }, 2)
        .with(Sym::W { level: s, shift: 1 }, -2)
        .with(Sym::W { level: s + 1, shift: 0 }, 2)
        .with(Sym::W { level: s + 1, shift: 1 }, -2)
}

/// Casoratians `W_0 … W_M` of the seed prefixes and `W_{s,n}` of the prefixes with `φ_n`.
struct Ladder {
    pot: Potentials,
    w: Vec<GridFn<BigFloat>>,
    wn: Vec<GridFn<BigFloat>>,
    eps: Vec<i32>,
}

impl Ladder {
    fn new(model: &RdqmModel, seeds: &[Seed], n: usize, top: usize) -> Result<Self> {
        let phi = model.eigenstate(n)?;
        let grids: Vec<_> = seeds.iter().map(|s| s.values.clone()).collect();
        let energies: Vec<_> = seeds.iter().map(|s| s.energy.clone()).collect();
        let mut w = Vec::new();
        let mut wn = Vec::new();
        let mut eps = Vec::new();
        for s in 0..=top {
            w.push(cas(&grids[..s], phi.len() + 1, model.precision())?);
            let mut with_n = grids[..s].to_vec();
            with_n.push(phi.clone());
            wn.push(casoratian_real_grid(&with_n, 0)?);
            eps.push(sign_factor(&energies[..s]));
        }
        Ok(Self { pot: model.potentials().clone(), w, wn, eps })
    }

    fn value(&self, f: Sym, x: usize) -> Result<BigFloat> {
        let at = |g: &GridFn<BigFloat>, k: i64| {
            let i = x as i64 + k;
            if i < 0 {
                return Err(Error::WindowUnderflow { required: 0, available: 0 });
            }
            g.at(i as usize).cloned()
        };
        match f {
            Sym::B(k) => at(&self.pot.b, k),
            Sym::D(k) => at(&self.pot.d, k),
            Sym::W { level, shift } => at(&self.w[level], shift),
        }
    }

    /// Closed-form `K_s = (-1)^s ε_s W_{s,n}`.
    fn closed_k(&self, s: usize) -> GridFn<BigFloat> {
        let flip = (s % 2 == 1) != (self.eps[s] < 0);
        self.wn[s].map(|v| if flip { -v } else { v.clone() })
    }

    /// `sgn W_l(0) = sgn W_l(1) = ε_l` for `l = 1, …, top`.
    fn assumption(&self) -> Option<String> {
        for l in 1..self.w.len() {
            for x in 0..2 {
                let s = self.w[l].values()[x].signum();
                if s != self.eps[l] {
                    return Some(format!("sgn W_{l}({x}) = {s} but ε = {}", self.eps[l]));
                }
            }
        }
        None
    }

    fn step(&self, s: usize, k: &GridFn<BigFloat>) -> Result<GridFn<BigFloat>> {
        let c_next = c_level(s + 1).recip();
        let r1 = sqrt_b_hat(s).mul(&c_level(s)).mul(&c_next);
        let r2 = sqrt_d_hat_next(s).mul(&c_level(s).shift(1)).mul(&c_next);
        // Q(x+k) is referenced at x = 0, i.e. Q(k).
        let sign_at = |f: Sym| Ok(self.value(f, 0)?.signum());
        let (g1, p1) = r1.externalize(sign_at)?;
        let (g2, p2) = r2.externalize(sign_at)?;
        let reach = |p: &[(Sym, i64)]| p.iter().map(|(f, _)| f.shift()).max().unwrap_or(0).max(0) as usize;
        let len = (k.len() - 1).min(self.w[s + 1].len().saturating_sub(reach(&p1).max(reach(&p2))));
        let plain = |p: &[(Sym, i64)], x: usize| -> Result<BigFloat> {
            let mut acc = BigFloat::one(k.values()[0].precision());
            for &(f, e) in p {
                acc = &acc * &self.value(f, x)?.powi(e);
            }
            Ok(acc)
        };
        let mut out = Vec::with_capacity(len);
        for x in 0..len {
            let t1 = &plain(&p1, x)? * &k.values()[x];
            let t2 = &plain(&p2, x)? * &k.values()[x + 1];
            let t1 = if g1 > 0 { t1 } else { -t1 };
            let t2 = if g2 > 0 { t2 } else { -t2 };
            out.push(&t1 - &t2);
        }
        Ok(GridFn::new(out))
    }
}

fn params(seeds: &[Seed], s: usize, n: usize) -> Vec<(&'static str, String)> {
    let e: Vec<String> = seeds.iter().map(|s| s.energy.to_sci_string(6)).collect();
    vec![("seed_energies", format!("[{}]", e.join(","))), ("s", s.to_string()), ("n", n.to_string())]
}

/// One step from the closed form at level `s` to level `s+1`, compared on `x ≤ x_cmp`.
pub fn darboux_step_replay(model: &RdqmModel, seeds: &[Seed], s: usize, n: usize, x_cmp: usize, tol: &BigFloat) -> Result<LabReport> {
    if s >= seeds.len() {
        return Err(Error::InvalidParameter(format!("step {s} needs at least {} seeds", s + 1)));
    }
    let ladder = Ladder::new(model, seeds, n, s + 1)?;
    let p = params(seeds, s, n);
    if let Some(v) = ladder.assumption() {
        return Ok(LabReport::new("rdqm-step-replay", &p, "assumption".into(), "violated".into(), false).with_detail(v).inconclusive());
    }
    let k_next = ladder.step(s, &ladder.closed_k(s))?;
    let (dev, _) = max_rel_dev(&k_next, &ladder.closed_k(s + 1), x_cmp)?;
    let sign = ladder.eps[s + 1] * ladder.eps[s];
    Ok(LabReport::new(
        "rdqm-step-replay",
        &p,
        format!("max relative deviation {}", dev.to_sci_string(6)),
        format!("tolerance {}", tol.to_sci_string(3)),
        dev <= *tol,
    )
    .with_detail(format!("ε_(s+1)/ε_s = {sign}")))
}

/// Full chain `φ_n → φ_{d₁ n} → … → φ_{D n}`, compared level by level and, at the end,
/// against [`deformed_eigenfunction`] with signs.
pub fn darboux_chain(
    model: &RdqmModel,
    set: &IndexSet<BigRational>,
    seeds: &[Seed],
    n: usize,
    x_cmp: usize,
    tol: &BigFloat,
) -> Result<LabReport> {
    let m = seeds.len();
    let ladder = Ladder::new(model, seeds, n, m)?;
    let p = params(seeds, m, n);
    if let Some(v) = ladder.assumption() {
        return Ok(LabReport::new("rdqm-chain", &p, "assumption".into(), "violated".into(), false).with_detail(v).inconclusive());
    }
    let mut k = ladder.closed_k(0);
    let mut worst = BigFloat::zero(model.precision());
    for s in 0..m {
        k = ladder.step(s, &k)?;
        worst = worst.max(max_rel_dev(&k, &ladder.closed_k(s + 1), x_cmp)?.0);
    }
    let closed = deformed_eigenfunction(model, set, seeds, n)?;
    let len = k.len().min(closed.len()).min(ladder.w[m].len() - 1);
    let full = GridFn::new(
        (0..len)
            .map(|x| Ok(&prefactor(&ladder.pot, &ladder.w[m], m, x)? * &k.values()[x]))
            .collect::<Result<Vec<_>>>()?,
    );
    let (final_dev, _) = max_rel_dev(&full, &closed, x_cmp)?;
    let pass = worst <= *tol && final_dev <= *tol;
    Ok(LabReport::new(
        "rdqm-chain",
        &p,
        format!("max relative deviation {}", final_dev.to_sci_string(6)),
        format!("tolerance {}", tol.to_sci_string(3)),
        pass,
    )
    .with_detail(format!("worst level deviation {}; ε_D = {}", worst.to_sci_string(6), ladder.eps[m])))
}
