//! idQM at the algebraic level: star conjugation, radical rational functions, the
//! prefactor identities `G/sqrtGG` and `VDvVDvs`, and the two-path comparison of
//! deformed eigenfunctions with polynomial stand-ins for the seed functions.
//!
//! Square roots are never evaluated. A radical function is kept as `cof · rad^{1/L}`
//! and two of them are compared through their `L`-th powers, which are ordinary
//! quotients of polynomials. Signs are compared separately at a real sample point.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det::{casoratian_imag, imag_node};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, int, rat};
use crate::exact::{Gq, Poly, RationalFn};
use crate::report::{list, LabReport};

/// Coefficientwise complex conjugation `f ↦ f*`.
pub fn star(f: &RationalFn) -> RationalFn {
    f.star()
}

/// Quotient of polynomials kept unreduced. Equality is decided by cross multiplication,
/// which avoids polynomial gcds on the large products built here.
#[derive(Clone, Debug)]
pub struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn shift(&self, delta: &Gq) -> Self {
        Self { num: self.num.shift(delta), den: self.den.shift(delta) }
    }

    pub fn star(&self) -> Self {
        Self { num: self.num.star(), den: self.den.star() }
    }

    pub fn eval(&self, x: &Gq) -> Option<Gq> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| &self.num.eval(x) / &d)
    }

    pub fn to_rational_fn(&self) -> RationalFn {
        RationalFn::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }
}

impl From<&RationalFn> for Frac {
    fn from(f: &RationalFn) -> Self {
        Self { num: f.num().clone(), den: f.den().clone() }
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `cof · rad^{1/index}`. Products follow `√a √b = √(ab)`; nothing is ever evaluated
/// under the root.
#[derive(Clone, Debug)]
pub struct RadicalRationalFn {
    cof: Frac,
    rad: Frac,
    index: u32,
}

impl RadicalRationalFn {
    pub fn new(cof: Frac, rad: Frac, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidParameter("radical index must be positive".into()));
        }
        Ok(Self { cof, rad, index })
    }

    pub fn rational(f: Frac) -> Self {
        Self { cof: f, rad: Frac::one(), index: 1 }
    }

    /// `rad^{1/index}` with unit cofactor.
    pub fn root_of(rad: Frac, index: u32) -> Self {
        Self { cof: Frac::one(), rad, index }
    }

    pub fn one() -> Self {
        Self::rational(Frac::one())
    }

    pub fn cof(&self) -> &Frac {
        &self.cof
    }

    pub fn rad(&self) -> &Frac {
        &self.rad
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let l = self.index.lcm(&rhs.index);
        Self {
            cof: self.cof.mul(&rhs.cof),
            rad: self.rad.pow(l / self.index).mul(&rhs.rad.pow(l / rhs.index)),
            index: l,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Ok(Self { cof: self.cof.recip()?, rad: self.rad.recip()?, index: self.index })
    }

    pub fn shift(&self, delta: &Gq) -> Self {
        Self { cof: self.cof.shift(delta), rad: self.rad.shift(delta), index: self.index }
    }

    pub fn star(&self) -> Self {
        Self { cof: self.cof.star(), rad: self.rad.star(), index: self.index }
    }

    /// Principal `k`-th root: the cofactor moves under the radical.
    pub fn root(&self, k: u32) -> Self {
        Self::root_of(self.power_free(), k * self.index)
    }

    /// `cof^index · rad`.
    pub fn power_free(&self) -> Frac {
        self.cof.pow(self.index).mul(&self.rad)
    }

    /// `(cof · rad^{1/index})^e` for `e` a multiple of the index.
    pub fn lifted(&self, e: u32) -> Frac {
        debug_assert_eq!(e % self.index, 0);
        self.power_free().pow(e / self.index)
    }

    /// Both functions raised to the least common multiple of their indices.
    pub fn common_powers(&self, other: &Self) -> (u32, Frac, Frac) {
        let l = self.index.lcm(&other.index);
        (l, self.lifted(l), other.lifted(l))
    }

    /// Sign at a real point where the cofactor is real and nonzero and the radicand is
    /// real and positive, taking the positive real root.
    pub fn sign_at(&self, x: &BigRational) -> Option<i32> {
        let x = Gq::real(x.clone());
        let c = self.cof.eval(&x)?;
        let r = self.rad.eval(&x)?;
        if !c.is_real() || c.is_zero() || !r.is_real() || !r.re.is_positive() {
            return None;
        }
        Some(if c.re.is_positive() { 1 } else { -1 })
    }
}

fn imag(q: BigRational) -> Gq {
    Gq::imag(q)
}

fn half(k: i64) -> BigRational {
    rat(k, 2)
}

fn cas(fs: &[Poly], gamma: &BigRational, what: &str) -> Result<Poly> {
    let w = casoratian_imag(fs, gamma)?;
    if w.is_zero() {
        return Err(Error::LinearDependence(format!("{what} vanishes identically")));
    }
    Ok(w)
}

/// `∏_{j ∈ js} V(x + i(c-j)γ) V*(x - i(c-j)γ)`.
fn vv_product(v: &Frac, gamma: &BigRational, c: &BigRational, js: std::ops::Range<usize>) -> Frac {
    let vs = v.star();
    js.fold(Frac::one(), |acc, j| {
        let a = (c - int(j as i64)) * gamma;
        acc.mul(&v.shift(&imag(a.clone()))).mul(&vs.shift(&imag(-a)))
    })
}

/// Fourth power of `G(x) = (∏_{j=0}^{l-1} V(x+i(l/2-j)γ) V*(x-i(l/2-j)γ))^{1/4}`.
fn g4(v: &Frac, gamma: &BigRational, l: usize) -> Frac {
    vv_product(v, gamma, &half(l as i64), 0..l)
}

/// Casoratian of `h·F_k` where every row shares the factor `h(x_j)`: the row factors
/// come out of the determinant by multilinearity.
fn cas_with_row_factor(h: &RadicalRationalFn, fs: &[Poly], gamma: &BigRational, what: &str) -> Result<RadicalRationalFn> {
    let n = fs.len();
    let rows = (1..=n).fold(RadicalRationalFn::one(), |acc, j| acc.mul(&h.shift(&imag_node(n, j, gamma))));
    Ok(rows.mul(&RadicalRationalFn::rational(Frac::poly(cas(fs, gamma, what)?))))
}

fn product_over_pair(f: &RadicalRationalFn, gamma: &BigRational, m: usize) -> RadicalRationalFn {
    let fs = f.star();
    (0..m).fold(RadicalRationalFn::one(), |acc, j| {
        let a = (half(m as i64) - int(j as i64)) * gamma;
        acc.mul(&f.shift(&imag(a.clone()))).mul(&fs.shift(&imag(-a)))
    })
}

/// `V_D(x)` for seeds `ψ₁…ψ_M` and the lowest surviving state `φ_μ`:
/// `√(V(x-iMγ/2) V*(x-i(M+2)γ/2)) · W[ψ](x+iγ/2)/W[ψ](x-iγ/2) · W[ψ,φ_μ](x-iγ)/W[ψ,φ_μ](x)`.
pub fn deformed_potential_vd(v: &RationalFn, seeds: &[Poly], gamma: &BigRational, mu_state: &Poly) -> Result<RadicalRationalFn> {
    let v = Frac::from(v);
    let m = seeds.len() as i64;
    let rad = v
        .shift(&imag(-(half(m) * gamma)))
        .mul(&v.star().shift(&imag(-(half(m + 2) * gamma))));
    let w = cas(seeds, gamma, "W_γ[ψ]")?;
    let mut with_mu = seeds.to_vec();
    with_mu.push(mu_state.clone());
    let wm = cas(&with_mu, gamma, "W_γ[ψ, φ_μ]")?;
    let hg = half(1) * gamma;
    let r1 = Frac::new(w.shift(&imag(hg.clone())), w.shift(&imag(-hg)))?;
    let r2 = Frac::new(wm.shift(&imag(-gamma.clone())), wm)?;
    RadicalRationalFn::new(r1.mul(&r2), rad, 2)
}

/// A two-path instance: `fs` stand in for the virtual seeds, `us` for the deleted
/// eigenstates, `phi_n` for the target eigenstate and `phi0` for the ground state.
#[derive(Clone, Debug)]
pub struct IdqmInstance {
    pub v: RationalFn,
    pub fs: Vec<Poly>,
    pub us: Vec<Poly>,
    pub phi_n: Poly,
    pub phi0: Poly,
    pub gamma: BigRational,
}

impl IdqmInstance {
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![
            ("V", self.v.to_string()),
            ("f", list(&self.fs)),
            ("u", list(&self.us)),
            ("phi_n", self.phi_n.to_string()),
            ("phi0", self.phi0.to_string()),
            ("gamma", format_rational(&self.gamma)),
            ("l", self.fs.len().to_string()),
            ("m", self.us.len().to_string()),
        ]
    }
}

fn require_real(ps: &[&Poly]) -> Result<()> {
    if ps.iter().all(|p| p.is_real()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("seed stand-ins must have real coefficients".into()))
    }
}

fn compare(check: &str, params: &[(&str, String)], lhs: &RadicalRationalFn, rhs: &RadicalRationalFn) -> LabReport {
    let (l, a, b) = lhs.common_powers(rhs);
    let mut params = params.to_vec();
    params.push(("power", l.to_string()));
    let pass = a == b;
    LabReport::new(check, &params, a.to_string(), b.to_string(), pass)
}

/// `∏_{j=1}^{m+1} G(x_j^{(m+1)}) / √(∏_{j=1}^m G(x_j^{(m)}-iγ/2) G(x_j^{(m)}+iγ/2))` against
/// the closed `V` product with exponent `1/8`, compared as eighth powers.
pub fn check_prefactor_gg(v: &RationalFn, gamma: &BigRational, l: usize, m: usize) -> Result<LabReport> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let vf = Frac::from(v);
    let g = RadicalRationalFn::root_of(g4(&vf, gamma, l), 4);
    let num = (1..=m + 1).fold(RadicalRationalFn::one(), |acc, j| acc.mul(&g.shift(&imag_node(m + 1, j, gamma))));
    let hg = half(1) * gamma;
    let den = (1..=m).fold(RadicalRationalFn::one(), |acc, j| {
        let x = imag_node(m, j, gamma);
        acc.mul(&g.shift(&(&x - &imag(hg.clone())))).mul(&g.shift(&(&x + &imag(hg.clone()))))
    });
    let lhs = num.mul(&den.root(2).recip()?);
    let c = half((l + m) as i64);
    let rhs = RadicalRationalFn::root_of(vv_product(&vf, gamma, &c, 0..l).mul(&vv_product(&vf, gamma, &c, m..l + m)), 8);
    let params = [("V", v.to_string()), ("gamma", format_rational(gamma)), ("l", l.to_string()), ("m", m.to_string())];
    Ok(compare("idqm-prefactor-gg", &params, &lhs, &rhs))
}

/// `∏_{j=0}^{m-1} V_{Dv}(x+i(m/2-j)γ) V*_{Dv}(x-i(m/2-j)γ)` against the `V` product with
/// exponent `1/2` times the four-point Casoratian ratio of the virtual seeds, compared
/// as squares.
pub fn check_potential_product(v: &RationalFn, fs: &[Poly], phi0: &Poly, gamma: &BigRational, m: usize) -> Result<LabReport> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let mut reals: Vec<&Poly> = fs.iter().collect();
    reals.push(phi0);
    require_real(&reals)?;
    let l = fs.len();
    let vdv = deformed_potential_vd(v, fs, gamma, phi0)?;
    let lhs = product_over_pair(&vdv, gamma, m);
    let vf = Frac::from(v);
    let c = half((l + m) as i64);
    let prod = vv_product(&vf, gamma, &c, 0..m).mul(&vv_product(&vf, gamma, &c, l..l + m));
    let w = cas(fs, gamma, "W_γ[f]")?;
    let up = half(m as i64 + 1) * gamma;
    let lo = half(m as i64 - 1) * gamma;
    let ratio = Frac::new(
        &w.shift(&imag(-up.clone())) * &w.shift(&imag(up)),
        &w.shift(&imag(-lo.clone())) * &w.shift(&imag(lo)),
    )?;
    let rhs = RadicalRationalFn::root_of(prod, 2).mul(&RadicalRationalFn::rational(ratio));
    let params = [
        ("V", v.to_string()),
        ("f", list(fs)),
        ("phi0", phi0.to_string()),
        ("gamma", format_rational(gamma)),
        ("l", l.to_string()),
        ("m", m.to_string()),
    ];
    Ok(compare("idqm-potential-product", &params, &lhs, &rhs))
}

/// One-shot deformation by all seeds `ψ = (f, u)`.
pub fn phi_one_shot(inst: &IdqmInstance) -> Result<RadicalRationalFn> {
    let gamma = &inst.gamma;
    let psi: Vec<Poly> = inst.fs.iter().chain(&inst.us).cloned().collect();
    let m = psi.len();
    let vf = Frac::from(&inst.v);
    let pre = RadicalRationalFn::root_of(vv_product(&vf, gamma, &half(m as i64), 0..m), 4);
    let mut with_n = psi.clone();
    with_n.push(inst.phi_n.clone());
    let n = cas(&with_n, gamma, "W_γ[ψ, φ_n]")?;
    let q = cas(&psi, gamma, "W_γ[ψ]")?;
    let hg = half(1) * gamma;
    let qq = &q.shift(&imag(-hg.clone())) * &q.shift(&imag(hg));
    let den = RadicalRationalFn::root_of(Frac::poly(qq), 2);
    Ok(pre.mul(&RadicalRationalFn::rational(Frac::poly(n))).mul(&den.recip()?))
}

/// Virtual deletion first, then the eigenstates of the intermediate system.
pub fn phi_staged(inst: &IdqmInstance) -> Result<RadicalRationalFn> {
    let gamma = &inst.gamma;
    let (l, m) = (inst.fs.len(), inst.us.len());
    let vdv = deformed_potential_vd(&inst.v, &inst.fs, gamma, &inst.phi0)?;
    let pre = product_over_pair(&vdv, gamma, m).root(4);
    let vf = Frac::from(&inst.v);
    let wf = cas(&inst.fs, gamma, "W_γ[f]")?;
    let hg = half(1) * gamma;
    let w = RadicalRationalFn::root_of(Frac::poly(&wf.shift(&imag(-hg.clone())) * &wf.shift(&imag(hg.clone()))), 2);
    let h = RadicalRationalFn::root_of(g4(&vf, gamma, l), 4).mul(&w.recip()?);
    let lift = |u: &Poly| {
        let mut fu = inst.fs.clone();
        fu.push(u.clone());
        cas(&fu, gamma, "W_γ[f, u]")
    };
    let big: Vec<Poly> = inst.us.iter().map(lift).collect::<Result<_>>()?;
    let mut with_n = big.clone();
    with_n.push(lift(&inst.phi_n)?);
    let n = cas_with_row_factor(&h, &with_n, gamma, "W_γ[φ_Dv e, φ_Dv n]")?;
    let q = cas_with_row_factor(&h, &big, gamma, "W_γ[φ_Dv e]")?;
    let den = q.shift(&imag(-hg.clone())).mul(&q.shift(&imag(hg))).root(2);
    Ok(pre.mul(&n).mul(&den.recip()?))
}

/// Integer points `0, 1, -1, 2, -2, …, ±40` are tried when no sample point is given.
pub const SAMPLE_RANGE: i64 = 40;

fn sample_candidates() -> impl Iterator<Item = BigRational> {
    (0..=2 * SAMPLE_RANGE).map(|k| int(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) }))
}

/// Two-path comparison: exact equality of the lifted powers, plus sign agreement at a
/// real point where both radicands are positive and the virtual-seed Casoratian is
/// positive (the regime in which the intermediate system's real square roots are
/// defined).
pub fn two_path_compare_idqm(inst: &IdqmInstance, x0: Option<BigRational>) -> Result<LabReport> {
    let mut reals: Vec<&Poly> = inst.fs.iter().chain(&inst.us).collect();
    reals.push(&inst.phi_n);
    reals.push(&inst.phi0);
    require_real(&reals)?;
    let one = phi_one_shot(inst)?;
    let staged = phi_staged(inst)?;
    let (l, a, b) = one.common_powers(&staged);
    let mut params = inst.params();
    params.push(("power", l.to_string()));
    let squares = a == b;
    let wf = cas(&inst.fs, &inst.gamma, "W_γ[f]")?;
    let admissible = |x: &BigRational| -> Option<(i32, i32)> {
        let w = wf.eval_rational(x);
        if !w.is_real() || !w.re.is_positive() {
            return None;
        }
        Some((one.sign_at(x)?, staged.sign_at(x)?))
    };
    let sample = match x0 {
        Some(x) => admissible(&x).map(|s| (x, s)),
        None => sample_candidates().find_map(|x| admissible(&x).map(|s| (x, s))),
    };
    let report = |pass: bool| LabReport::new("idqm-two-path", &params, a.to_string(), b.to_string(), pass);
    Ok(match sample {
        None => report(false)
            .inconclusive()
            .with_detail(format!("squares equal: {squares}; no admissible real sample point")),
        Some((x, (s1, s2))) => report(squares && s1 == s2)
            .with_detail(format!("squares equal: {squares}; sign at x0 = {}: {s1} vs {s2}", format_rational(&x))),
    })
}

fn small(rng: &mut ChaCha8Rng, nonzero: bool) -> i64 {
    loop {
        let c = rng.gen_range(-4..=4);
        if !nonzero || c != 0 {
            return c;
        }
    }
}

fn real_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut c: Vec<i64> = (0..degree).map(|_| small(rng, false)).collect();
    c.push(small(rng, true));
    Poly::from_ints(&c)
}

fn gaussian_poly(rng: &mut ChaCha8Rng, degree: usize, complex: bool) -> Poly {
    let coeffs = (0..=degree)
        .map(|k| {
            let re = small(rng, k == degree);
            let im = if complex { small(rng, false) } else { 0 };
            Gq::new(int(re), int(im))
        })
        .collect();
    Poly::new(coeffs)
}

/// Random instance: `V` a quotient of polynomials of degree at most 2 (complex half the
/// time) and real polynomial stand-ins of pairwise distinct degrees, so that every
/// Casoratian is nonzero. The sign of `f₁` is chosen so that `W_γ[f]` has a positive
/// leading coefficient, as a virtual-seed Casoratian is positive on the real line.
pub fn random_instance(rng: &mut ChaCha8Rng, l: usize, m: usize, gamma: BigRational) -> IdqmInstance {
    let complex = rng.gen_bool(0.5);
    let (dn, dd) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let num = gaussian_poly(rng, dn, complex);
    let den = gaussian_poly(rng, dd, complex);
    let v = RationalFn::new(num, den).expect("nonzero leading coefficient");
    let top = 3.max(l + m + 1);
    let mut degrees: Vec<usize> = (0..=top).collect();
    for i in (1..degrees.len()).rev() {
        degrees.swap(i, rng.gen_range(0..=i));
    }
    let mut polys = degrees.into_iter().map(|d| real_poly(rng, d));
    let mut fs: Vec<Poly> = polys.by_ref().take(l).collect();
    let w = casoratian_imag(&fs, &gamma).expect("nonzero gamma");
    if w.leading().is_some_and(|c| c.re.is_negative()) {
        fs[0] = -&fs[0];
    }
    let us = polys.by_ref().take(m).collect();
    let phi_n = polys.next().expect("pool holds l+m+2 degrees");
    let phi0 = polys.next().expect("pool holds l+m+2 degrees");
    IdqmInstance { v, fs, us, phi_n, phi0, gamma }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_l: usize,
    pub max_m: usize,
    pub gammas: Vec<BigRational>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { trials: 50, seed: 20_240_501, max_l: 2, max_m: 2, gammas: vec![int(1), rat(1, 2)] }
    }
}

fn sweep_instance(cfg: &SweepConfig, trial: usize) -> IdqmInstance {
    let shapes: Vec<(usize, usize)> =
        (0..=cfg.max_l).flat_map(|l| (1..=cfg.max_m).map(move |m| (l, m))).collect();
    let (l, m) = shapes[trial % shapes.len()];
    let gamma = cfg.gammas[(trial / shapes.len()) % cfg.gammas.len()].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    random_instance(&mut rng, l, m, gamma)
}

fn or_error(check: &str, r: Result<LabReport>) -> LabReport {
    r.unwrap_or_else(|e| LabReport::new(check, &[], String::new(), String::new(), false).with_detail(e.to_string()))
}

/// Runs the three idQM checks on `trials` random instances each.
pub fn sweep(cfg: &SweepConfig) -> Vec<LabReport> {
    use rayon::prelude::*;
    let mut out: Vec<(usize, usize, LabReport)> = (0..cfg.trials)
        .into_par_iter()
        .flat_map_iter(|t| {
            let inst = sweep_instance(cfg, t);
            let m = inst.us.len();
            let with_trial = |r: LabReport| {
                let mut r = r;
                r.params.insert("trial".into(), t.to_string());
                r
            };
            vec![
                (t, 0, with_trial(or_error("idqm-prefactor-gg", check_prefactor_gg(&inst.v, &inst.gamma, inst.fs.len(), m)))),
                (t, 1, with_trial(or_error(
                    "idqm-potential-product",
                    check_potential_product(&inst.v, &inst.fs, &inst.phi0, &inst.gamma, m),
                ))),
                (t, 2, with_trial(or_error("idqm-two-path", two_path_compare_idqm(&inst, None)))),
            ]
        })
        .collect();
    out.sort_by_key(|(t, k, _)| (*k, *t));
    out.into_iter().map(|(_, _, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(p: Poly) -> RationalFn {
        RationalFn::from_poly(p)
    }

    #[test]
    fn star_examples() {
        let f = rf(Poly::new(vec![Gq::i(), Gq::from_int(1)]));
        assert_eq!(star(&f), rf(Poly::new(vec![-Gq::i(), Gq::from_int(1)])));
        assert_eq!(star(&star(&f)), f);
        let real = RationalFn::new(p(&[1, 2]), p(&[3, 0, 1])).unwrap();
        assert_eq!(star(&real), real);
        let g = rf(Poly::new(vec![Gq::new(int(2), int(-3)), Gq::i()]));
        assert_eq!(star(&(&f * &g)), &star(&f) * &star(&g));
    }

    #[test]
    fn potential_vd_trivial_cases() {
        let v = rf(Poly::new(vec![Gq::i(), Gq::from_int(1)]));
        let vd = deformed_potential_vd(&v, &[], &int(1), &Poly::one()).unwrap();
        assert_eq!(vd.cof(), &Frac::one());
        let expect = Frac::from(&v).mul(&Frac::from(&v).star().shift(&Gq::imag(int(-1))));
        assert_eq!(vd.rad(), &expect);
        let vd = deformed_potential_vd(&RationalFn::one(), &[p(&[0, 1])], &int(1), &p(&[1, 0, 1])).unwrap();
        assert_eq!(vd.rad(), &Frac::one());
        assert!(matches!(
            deformed_potential_vd(&v, &[p(&[1]), p(&[2])], &int(1), &Poly::one()),
            Err(Error::LinearDependence(_))
        ));
    }

    #[test]
    fn radical_products_and_roots() {
        let a = RadicalRationalFn::new(Frac::poly(p(&[0, 2])), Frac::poly(p(&[1, 1])), 2).unwrap();
        let b = RadicalRationalFn::root_of(Frac::poly(p(&[0, 0, 1])), 4);
        let ab = a.mul(&b);
        assert_eq!(ab.index(), 4);
        assert_eq!(ab.power_free(), Frac::poly(&p(&[0, 2]).pow(4) * &(&p(&[1, 1]).pow(2) * &p(&[0, 0, 1]))));
        assert_eq!(a.root(2).index(), 4);
        assert_eq!(a.sign_at(&int(-3)), None);
        assert_eq!(a.sign_at(&int(3)), Some(1));
        assert_eq!(a.recip().unwrap().mul(&a).power_free(), Frac::one());
    }

    #[test]
    fn prefactor_gg_cases() {
        let x = rf(p(&[0, 1]));
        assert!(check_prefactor_gg(&x, &int(1), 0, 2).unwrap().pass);
        assert!(check_prefactor_gg(&x, &int(1), 1, 1).unwrap().pass);
        let v = RationalFn::new(Poly::new(vec![Gq::new(int(1), int(2)), Gq::from_int(1), Gq::from_int(3)]), p(&[2, 1])).unwrap();
        for l in 0..=3 {
            for m in 1..=3 {
                assert!(check_prefactor_gg(&v, &rat(1, 2), l, m).unwrap().pass, "l={l} m={m}");
            }
        }
        assert!(check_prefactor_gg(&v, &int(1), 1, 0).is_err());
    }

    #[test]
    fn potential_product_cases() {
        let v = rf(p(&[1, 1]));
        assert!(check_potential_product(&v, &[], &Poly::one(), &int(1), 2).unwrap().pass);
        assert!(check_potential_product(&v, &[p(&[0, 0, 1])], &Poly::one(), &int(1), 1).unwrap().pass);
        assert!(check_potential_product(&v, &[p(&[1, 0, 1]), p(&[0, 1, 0, 2])], &p(&[3]), &rat(1, 2), 2).unwrap().pass);
        let complex = Poly::new(vec![Gq::i(), Gq::from_int(1)]);
        assert!(check_potential_product(&v, &[complex], &Poly::one(), &int(1), 1).is_err());
    }

    #[test]
    fn two_path_hand_cases() {
        let base = IdqmInstance {
            v: rf(p(&[2, 1])),
            fs: vec![p(&[1, 0, 1])],
            us: vec![p(&[0, 1])],
            phi_n: p(&[1, 0, 0, 1]),
            phi0: Poly::one(),
            gamma: int(1),
        };
        let r = two_path_compare_idqm(&base, None).unwrap();
        assert!(r.pass, "{r:?}");
        let no_virtual = IdqmInstance { fs: vec![], ..base.clone() };
        assert!(two_path_compare_idqm(&no_virtual, None).unwrap().pass);
        let no_eigen = IdqmInstance { us: vec![], ..base };
        assert!(two_path_compare_idqm(&no_eigen, None).unwrap().pass);
    }

    #[test]
    fn sign_tracks_seed_casoratian_for_odd_m() {
        let inst = IdqmInstance {
            v: rf(p(&[2, 1])),
            fs: vec![p(&[0, 1])],
            us: vec![p(&[1])],
            phi_n: p(&[1, 0, 1]),
            phi0: p(&[0, 0, 0, 1]),
            gamma: int(1),
        };
        let (one, staged) = (phi_one_shot(&inst).unwrap(), phi_staged(&inst).unwrap());
        let (_, a, b) = one.common_powers(&staged);
        assert_eq!(a, b);
        // W_γ[f] = x: the positive-root convention drops a factor sgn(x) for m = 1.
        assert_eq!(one.sign_at(&int(3)), staged.sign_at(&int(3)));
        assert_eq!(one.sign_at(&int(-3)).unwrap(), -staged.sign_at(&int(-3)).unwrap());
        let r = two_path_compare_idqm(&inst, Some(int(-3))).unwrap();
        assert_eq!(r.status, crate::identities::Status::Inconclusive);
        assert!(two_path_compare_idqm(&inst, Some(int(3))).unwrap().pass);
    }

    #[test]
    fn squared_values_are_real_for_real_inputs() {
        let inst = IdqmInstance {
            v: RationalFn::new(p(&[1, 0, 1]), p(&[3, 1])).unwrap(),
            fs: vec![p(&[0, 1]), p(&[1, 0, 2])],
            us: vec![p(&[1])],
            phi_n: p(&[0, 0, 0, 1]),
            phi0: p(&[1, 0, 0, 0, 1]),
            gamma: rat(1, 2),
        };
        let staged = phi_staged(&inst).unwrap().lifted(8);
        for x in [-2, 1, 5] {
            assert!(staged.eval(&Gq::from_int(x)).unwrap().is_real());
        }
    }

    #[test]
    fn sweep_passes_small() {
        let cfg = SweepConfig { trials: 6, ..SweepConfig::default() };
        for r in sweep(&cfg) {
            assert!(r.pass, "{} {:?} {:?}", r.check, r.params, r.detail);
        }
    }
}
