use crate::det::wronskian_common_den;
use crate::error::{Error, Result};
use crate::exact::{ExpPoly, ExpPolyRatio};

use super::{Ctx, Outcome};

fn nonzero(g: &ExpPoly, what: &str) -> Result<()> {
    if g.is_zero() {
        return Err(Error::InvalidParameter(format!("{what} must be nonzero")));
    }
    Ok(())
}

pub(super) fn exp_pow(g: &ExpPoly, e: usize) -> ExpPoly {
    (0..e).fold(ExpPoly::one(), |acc, _| acc.mul(g))
}

fn concat(a: &[ExpPoly], b: &[ExpPoly]) -> Vec<ExpPoly> {
    a.iter().chain(b).cloned().collect()
}

/// `(f/g)′ · g² = W[g, f]`.
pub fn check_wronskian_quotient(f: &ExpPoly, g: &ExpPoly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g, "g")?;
    let q = ExpPolyRatio::quotient(f, g)?;
    let lhs = q.derivative().mul(&g.mul(g).to_ratio());
    let rhs = ctx.wronskian(&[g.clone(), f.clone()], true)?.to_ratio();
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W[1, f₁, …, fₙ] = W[f₁′, …, fₙ′]`.
pub fn check_wronskian_one_reduction(fs: &[ExpPoly], ctx: &Ctx) -> Result<Outcome> {
    let mut with_one = vec![ExpPoly::one()];
    with_one.extend_from_slice(fs);
    let lhs = ctx.wronskian(&with_one, true)?;
    let ders: Vec<ExpPoly> = fs.iter().map(ExpPoly::derivative).collect();
    let rhs = ctx.wronskian(&ders, false)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W[g f₁, …, g fₙ] = gⁿ W[f₁, …, fₙ]`.
pub fn check_wronskian_gauge(fs: &[ExpPoly], g: &ExpPoly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g, "g")?;
    let gf: Vec<ExpPoly> = fs.iter().map(|f| g.mul(f)).collect();
    let lhs = ctx.wronskian(&gf, true)?;
    let rhs = exp_pow(g, fs.len()).mul(&ctx.wronskian(fs, false)?);
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `g^{n-1} W[g, f₁, …, fₙ] = W[W[g,f₁], …, W[g,fₙ]]`, with both sides multiplied by `g` when `n = 0`.
pub fn check_wronskian_nesting(fs: &[ExpPoly], g: &ExpPoly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g, "g")?;
    let n = fs.len();
    let mut gfs = vec![g.clone()];
    gfs.extend_from_slice(fs);
    let big = ctx.wronskian(&gfs, true)?;
    let inner = fs
        .iter()
        .map(|f| ctx.wronskian(&[g.clone(), f.clone()], false))
        .collect::<Result<Vec<_>>>()?;
    let nested = ctx.wronskian(&inner, false)?;
    let lhs = exp_pow(g, n.saturating_sub(1)).mul(&big);
    let rhs = exp_pow(g, usize::from(n == 0)).mul(&nested);
    Ok(Outcome::compare(&lhs, &rhs))
}

/// Both sides of `W[f]^{m-1} W[f, u] = W[W[f,u₁], …, W[f,u_m]]`.
pub fn wronskian_theorem_sides(fs: &[ExpPoly], us: &[ExpPoly], ctx: &Ctx) -> Result<(ExpPoly, ExpPoly)> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let w = ctx.wronskian(fs, false)?;
    let big = ctx.wronskian(&concat(fs, us), true)?;
    let lhs = exp_pow(&w, us.len() - 1).mul(&big);
    let inner = us
        .iter()
        .map(|u| ctx.wronskian(&concat(fs, std::slice::from_ref(u)), false))
        .collect::<Result<Vec<_>>>()?;
    let rhs = ctx.wronskian(&inner, false)?;
    Ok((lhs, rhs))
}

pub fn check_wronskian_theorem(fs: &[ExpPoly], us: &[ExpPoly], ctx: &Ctx) -> Result<Outcome> {
    let (lhs, rhs) = wronskian_theorem_sides(fs, us, ctx)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W[f₁..f_l, u₁..u_m] / W[f] = W[W[f,u₁]/W[f], …, W[f,u_m]/W[f]]`. The right side is the
/// Wronskian of the quotients, taken over their common denominator; both sides are then
/// cleared of denominators.
pub fn check_wronskian_corollary(fs: &[ExpPoly], us: &[ExpPoly], ctx: &Ctx) -> Result<Outcome> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = us.len();
    let w = ctx.wronskian(fs, false)?;
    if w.is_zero() {
        return Err(Error::LinearDependence("W[f] vanishes identically".into()));
    }
    let big = ctx.wronskian(&concat(fs, us), true)?;
    let nums = us
        .iter()
        .map(|u| ctx.wronskian(&concat(fs, std::slice::from_ref(u)), false))
        .collect::<Result<Vec<_>>>()?;
    let r = wronskian_common_den(&nums, &w);
    ctx.guard(r.base())?;
    let lhs = big.mul(&ExpPoly::plain(w.base().pow((m * (m + 1) / 2) as u32)));
    let rhs = r.mul(&w);
    Ok(Outcome::compare(&lhs, &rhs))
}
