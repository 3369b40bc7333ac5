use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::det::imag_node;
use crate::error::{Error, Result};
use crate::exact::{Gq, Poly};

use super::{shifted_product, Ctx, Outcome};

fn half_shift(gamma: &BigRational, sign: i64) -> Gq {
    Gq::imag(gamma * BigRational::new(sign.into(), 2.into()))
}

fn nodes(n: usize, gamma: &BigRational) -> impl Iterator<Item = Gq> + '_ {
    (1..=n).map(move |j| imag_node(n, j, gamma))
}

fn concat(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().chain(b).cloned().collect()
}

fn nonzero(g: &Poly) -> Result<()> {
    if g.is_zero() {
        return Err(Error::InvalidParameter("g must be nonzero".into()));
    }
    Ok(())
}

/// `f(x-iγ/2)/g(x-iγ/2) - f(x+iγ/2)/g(x+iγ/2) = W_γ[g,f] / (i g(x-iγ/2) g(x+iγ/2))`,
/// multiplied through by `i g(x-iγ/2) g(x+iγ/2)`.
pub fn check_cas_imag_quotient(f: &Poly, g: &Poly, gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let (m, p) = (half_shift(gamma, -1), half_shift(gamma, 1));
    let cross = &(&f.shift(&m) * &g.shift(&p)) - &(&f.shift(&p) * &g.shift(&m));
    let lhs = cross.scale(&Gq::i());
    let rhs = ctx.cas_imag(&[g.clone(), f.clone()], gamma, true)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_γ[1, f₁, …, fₙ] = iⁿ W_γ[Df₁, …, Dfₙ]` with `Df(x) = f(x-iγ/2) - f(x+iγ/2)`.
pub fn check_cas_imag_one_reduction(fs: &[Poly], gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    let mut with_one = vec![Poly::one()];
    with_one.extend_from_slice(fs);
    let lhs = ctx.cas_imag(&with_one, gamma, true)?;
    let (m, p) = (half_shift(gamma, -1), half_shift(gamma, 1));
    let ds: Vec<Poly> = fs.iter().map(|f| &f.shift(&m) - &f.shift(&p)).collect();
    let rhs = ctx.cas_imag(&ds, gamma, false)?.scale(&Gq::i_pow(fs.len() as i64));
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_γ[g f₁, …, g fₙ] = ∏ⱼ g(xⱼ⁽ⁿ⁾) W_γ[f₁, …, fₙ]`.
pub fn check_cas_imag_gauge(fs: &[Poly], g: &Poly, gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let gf: Vec<Poly> = fs.iter().map(|f| g * f).collect();
    let lhs = ctx.cas_imag(&gf, gamma, true)?;
    let rhs = &shifted_product(g, nodes(fs.len(), gamma)) * &ctx.cas_imag(fs, gamma, false)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_γ[g, f₁, …, fₙ] ∏_{j=1}^n g(xⱼ⁽ⁿ⁺¹⁾) = g(x₁⁽ⁿ⁺¹⁾) W_γ[W_γ[g,f₁], …, W_γ[g,fₙ]]`.
pub fn check_cas_imag_nesting(fs: &[Poly], g: &Poly, gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let n = fs.len();
    let mut gfs = vec![g.clone()];
    gfs.extend_from_slice(fs);
    let big = ctx.cas_imag(&gfs, gamma, true)?;
    let inner = fs
        .iter()
        .map(|f| ctx.cas_imag(&[g.clone(), f.clone()], gamma, false))
        .collect::<Result<Vec<_>>>()?;
    let nested = ctx.cas_imag(&inner, gamma, false)?;
    let lhs = &big * &shifted_product(g, nodes(n + 1, gamma).take(n));
    let rhs = &g.shift(&imag_node(n + 1, 1, gamma)) * &nested;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// Both sides of `∏_{j=1}^{m-1} W_γ[f](xⱼ⁽ᵐ⁻¹⁾) · W_γ[f, u] = W_γ[W_γ[f,u₁], …, W_γ[f,u_m]]`.
pub fn cas_imag_theorem_sides(fs: &[Poly], us: &[Poly], gamma: &BigRational, ctx: &Ctx) -> Result<(Poly, Poly)> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = us.len();
    let w = ctx.cas_imag(fs, gamma, false)?;
    let big = ctx.cas_imag(&concat(fs, us), gamma, true)?;
    let lhs = &shifted_product(&w, nodes(m - 1, gamma)) * &big;
    let inner = us
        .iter()
        .map(|u| ctx.cas_imag(&concat(fs, std::slice::from_ref(u)), gamma, false))
        .collect::<Result<Vec<_>>>()?;
    let rhs = ctx.cas_imag(&inner, gamma, false)?;
    Ok((lhs, rhs))
}

pub fn check_cas_imag_theorem(fs: &[Poly], us: &[Poly], gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    let (lhs, rhs) = cas_imag_theorem_sides(fs, us, gamma, ctx)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// Squared corollary:
/// `W_γ[f,u]² ∏_{j=1}^m w²(xⱼ⁽ᵐ⁾) = W_γ[F]² W(x-imγ/2) W(x+imγ/2)`
/// with `W = W_γ[f]`, `F_k = W_γ[f,u_k]` and `w²(y) = W(y-iγ/2) W(y+iγ/2)`.
pub fn check_cas_imag_corollary(fs: &[Poly], us: &[Poly], gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = us.len();
    let w = ctx.cas_imag(fs, gamma, false)?;
    if w.is_zero() {
        return Err(Error::LinearDependence("W_γ[f] vanishes identically".into()));
    }
    let big = ctx.cas_imag(&concat(fs, us), gamma, true)?;
    let w2 = &w.shift(&half_shift(gamma, -1)) * &w.shift(&half_shift(gamma, 1));
    let inner = us
        .iter()
        .map(|u| ctx.cas_imag(&concat(fs, std::slice::from_ref(u)), gamma, false))
        .collect::<Result<Vec<_>>>()?;
    let outer = ctx.cas_imag(&inner, gamma, false)?;
    let mg = gamma * BigRational::from_integer((m as i64).into());
    let lhs = &(&big * &big) * &shifted_product(&w2, nodes(m, gamma));
    let edge = &w.shift(&half_shift(&mg, -1)) * &w.shift(&half_shift(&mg, 1));
    let rhs = &(&outer * &outer) * &edge;
    ctx.guard(&lhs)?;
    Ok(Outcome::compare(&lhs, &rhs))
}
