use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Gq, Poly};

use super::{shifted_product, Ctx, Outcome};

fn shift(p: &Poly, k: i64) -> Poly {
    p.shift(&Gq::from_int(k))
}

fn steps(range: std::ops::Range<i64>) -> impl Iterator<Item = Gq> {
    range.map(Gq::from_int)
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

/// `f(x+1)/g(x+1) - f(x)/g(x) = W_C[g,f] / (g(x) g(x+1))`, multiplied by `g(x) g(x+1)`.
pub fn check_cas_real_quotient(f: &Poly, g: &Poly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let lhs = &(&shift(f, 1) * g) - &(f * &shift(g, 1));
    let rhs = ctx.cas_real(&[g.clone(), f.clone()], true)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_C[1, f₁, …, fₙ] = W_C[Df₁, …, Dfₙ]` with `Df(x) = f(x+1) - f(x)`.
pub fn check_cas_real_one_reduction(fs: &[Poly], ctx: &Ctx) -> Result<Outcome> {
    let mut with_one = vec![Poly::one()];
    with_one.extend_from_slice(fs);
    let lhs = ctx.cas_real(&with_one, true)?;
    let ds: Vec<Poly> = fs.iter().map(|f| &shift(f, 1) - f).collect();
    let rhs = ctx.cas_real(&ds, false)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_C[g f₁, …, g fₙ] = ∏_{j=1}^n g(x+j-1) W_C[f₁, …, fₙ]`.
pub fn check_cas_real_gauge(fs: &[Poly], g: &Poly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let gf: Vec<Poly> = fs.iter().map(|f| g * f).collect();
    let lhs = ctx.cas_real(&gf, true)?;
    let rhs = &shifted_product(g, steps(0..fs.len() as i64)) * &ctx.cas_real(fs, false)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// `W_C[g, f₁, …, fₙ] ∏_{j=1}^n g(x+j-1) = g(x) W_C[W_C[g,f₁], …, W_C[g,fₙ]]`.
pub fn check_cas_real_nesting(fs: &[Poly], g: &Poly, ctx: &Ctx) -> Result<Outcome> {
    nonzero(g)?;
    let mut gfs = vec![g.clone()];
    gfs.extend_from_slice(fs);
    let big = ctx.cas_real(&gfs, true)?;
    let inner = fs
        .iter()
        .map(|f| ctx.cas_real(&[g.clone(), f.clone()], false))
        .collect::<Result<Vec<_>>>()?;
    let nested = ctx.cas_real(&inner, false)?;
    let lhs = &big * &shifted_product(g, steps(0..fs.len() as i64));
    let rhs = g * &nested;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// Both sides of `∏_{j=1}^{m-1} W_C[f](x+j) · W_C[f, u] = W_C[W_C[f,u₁], …, W_C[f,u_m]]`.
/// The `Eq3Shift` fault moves every factor one step left.
pub fn cas_real_theorem_sides(fs: &[Poly], us: &[Poly], ctx: &Ctx) -> Result<(Poly, Poly)> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = us.len() as i64;
    let w = ctx.cas_real(fs, false)?;
    let big = ctx.cas_real(&concat(fs, us), true)?;
    let first = if ctx.eq3_shifted() { 0 } else { 1 };
    let lhs = &shifted_product(&w, steps(first..first + m - 1)) * &big;
    let inner = us
        .iter()
        .map(|u| ctx.cas_real(&concat(fs, std::slice::from_ref(u)), false))
        .collect::<Result<Vec<_>>>()?;
    let rhs = ctx.cas_real(&inner, false)?;
    Ok((lhs, rhs))
}

pub fn check_cas_real_theorem(fs: &[Poly], us: &[Poly], ctx: &Ctx) -> Result<Outcome> {
    let (lhs, rhs) = cas_real_theorem_sides(fs, us, ctx)?;
    Ok(Outcome::compare(&lhs, &rhs))
}

/// Squared corollary:
/// `W_C[f,u]² ∏_{j=0}^{m-1} w²(x+j) = W_C[F]² W(x) W(x+m)` with `w²(y) = W(y) W(y+1)`.
pub fn check_cas_real_corollary(fs: &[Poly], us: &[Poly], ctx: &Ctx) -> Result<Outcome> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = us.len() as i64;
    let w = ctx.cas_real(fs, false)?;
    if w.is_zero() {
        return Err(Error::LinearDependence("W_C[f] vanishes identically".into()));
    }
    let big = ctx.cas_real(&concat(fs, us), true)?;
    let w2 = &w * &shift(&w, 1);
    let inner = us
        .iter()
        .map(|u| ctx.cas_real(&concat(fs, std::slice::from_ref(u)), false))
        .collect::<Result<Vec<_>>>()?;
    let outer = ctx.cas_real(&inner, false)?;
    let lhs = &(&big * &big) * &shifted_product(&w2, steps(0..m));
    let rhs = &(&(&outer * &outer) * &w) * &shift(&w, m);
    ctx.guard(&lhs)?;
    Ok(Outcome::compare(&lhs, &rhs))
}
