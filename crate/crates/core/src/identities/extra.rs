use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::det::{wronskian, wronskian_common_den};
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, factorial, format_rational, int, pow_rat};
use crate::exact::{BigFloat, ExpPoly, Gq, Poly};

use super::imag::cas_imag_theorem_sides;
use super::real::cas_real_theorem_sides;
use super::wronskian::wronskian_theorem_sides;
use super::{Ctx, Outcome};

fn same_text<T: std::fmt::Display>(what: &str, a: &T, b: &T) -> Outcome {
    let (a, b) = (a.to_string(), b.to_string());
    let pass = a == b;
    let o = Outcome { lhs: a, rhs: b, pass, note: None, inconclusive: false };
    if pass {
        o
    } else {
        o.with_note(format!("{what} differs"))
    }
}

fn two(us: &[ExpPoly]) -> Result<()> {
    if us.len() != 2 {
        return Err(Error::InvalidParameter("the m=2 identities take exactly two functions g, h".into()));
    }
    Ok(())
}

/// `W[W[f,g], W[f,h]] = W[f] W[f,g,h]`, also matched textually against the theorem at m=2.
pub fn check_eq1(fs: &[ExpPoly], gh: &[ExpPoly], ctx: &Ctx) -> Result<Outcome> {
    two(gh)?;
    let with = |u: &ExpPoly| fs.iter().chain(std::iter::once(u)).cloned().collect::<Vec<_>>();
    let lhs = ctx.wronskian(&[ctx.wronskian(&with(&gh[0]), false)?, ctx.wronskian(&with(&gh[1]), false)?], false)?;
    let all: Vec<ExpPoly> = fs.iter().chain(gh).cloned().collect();
    let rhs = ctx.wronskian(fs, false)?.mul(&ctx.wronskian(&all, true)?);
    let (tl, tr) = wronskian_theorem_sides(fs, gh, ctx)?;
    Ok(Outcome::all(vec![
        Outcome::compare(&lhs, &rhs),
        same_text("theorem left side", &tl, &rhs),
        same_text("theorem right side", &tr, &lhs),
    ]))
}

/// `W_γ[W_γ[f,g], W_γ[f,h]] = W_γ[f] W_γ[f,g,h]`.
pub fn check_eq2(fs: &[Poly], gh: &[Poly], gamma: &BigRational, ctx: &Ctx) -> Result<Outcome> {
    if gh.len() != 2 {
        return Err(Error::InvalidParameter("the m=2 identities take exactly two functions g, h".into()));
    }
    let with = |u: &Poly| fs.iter().chain(std::iter::once(u)).cloned().collect::<Vec<_>>();
    let lhs = ctx.cas_imag(
        &[ctx.cas_imag(&with(&gh[0]), gamma, false)?, ctx.cas_imag(&with(&gh[1]), gamma, false)?],
        gamma,
        false,
    )?;
    let all: Vec<Poly> = fs.iter().chain(gh).cloned().collect();
    let rhs = &ctx.cas_imag(fs, gamma, false)? * &ctx.cas_imag(&all, gamma, true)?;
    let (tl, tr) = cas_imag_theorem_sides(fs, gh, gamma, ctx)?;
    Ok(Outcome::all(vec![
        Outcome::compare(&lhs, &rhs),
        same_text("theorem left side", &tl, &rhs),
        same_text("theorem right side", &tr, &lhs),
    ]))
}

/// `W_C[W_C[f,g], W_C[f,h]](x) = W_C[f](x+1) W_C[f,g,h](x)`.
pub fn check_eq3(fs: &[Poly], gh: &[Poly], ctx: &Ctx) -> Result<Outcome> {
    if gh.len() != 2 {
        return Err(Error::InvalidParameter("the m=2 identities take exactly two functions g, h".into()));
    }
    let with = |u: &Poly| fs.iter().chain(std::iter::once(u)).cloned().collect::<Vec<_>>();
    let lhs = ctx.cas_real(&[ctx.cas_real(&with(&gh[0]), false)?, ctx.cas_real(&with(&gh[1]), false)?], false)?;
    let all: Vec<Poly> = fs.iter().chain(gh).cloned().collect();
    let step = if ctx.eq3_shifted() { 0 } else { 1 };
    let rhs = &ctx.cas_real(fs, false)?.shift(&Gq::from_int(step)) * &ctx.cas_real(&all, true)?;
    let (tl, tr) = cas_real_theorem_sides(fs, gh, ctx)?;
    Ok(Outcome::all(vec![
        Outcome::compare(&lhs, &rhs),
        same_text("theorem left side", &tl, &rhs),
        same_text("theorem right side", &tr, &lhs),
    ]))
}

/// Two-path ratio: `W[f,u,v]/W[f,u] = W[F₁,…,F_m,F_v]/W[F₁,…,F_m]` with `F = W[f,·]/W[f]`.
/// The quotient Wronskians are taken over the common denominator `W[f]` and the
/// identity is compared after cross multiplication.
pub fn check_wro_id(fs: &[ExpPoly], us: &[ExpPoly], v: &ExpPoly, ctx: &Ctx) -> Result<Outcome> {
    let w = ctx.wronskian(fs, false)?;
    if w.is_zero() {
        return Err(Error::LinearDependence("W[f] vanishes identically".into()));
    }
    let m = us.len();
    let fu: Vec<ExpPoly> = fs.iter().chain(us).cloned().collect();
    let mut fuv = fu.clone();
    fuv.push(v.clone());
    let a = ctx.wronskian(&fu, false)?;
    let av = ctx.wronskian(&fuv, true)?;
    let lift = |u: &ExpPoly| -> Result<ExpPoly> {
        let mut list = fs.to_vec();
        list.push(u.clone());
        ctx.wronskian(&list, false)
    };
    let mut nums = us.iter().map(lift).collect::<Result<Vec<_>>>()?;
    let nf = wronskian_common_den(&nums, &w);
    nums.push(lift(v)?);
    let nfv = wronskian_common_den(&nums, &w);
    ctx.guard(nfv.base())?;
    if a.is_zero() || nf.is_zero() {
        return Err(Error::LinearDependence("W[f,u] vanishes identically".into()));
    }
    let lhs = av.mul(&nf).mul(&ExpPoly::plain(w.base().pow(m as u32 + 1)));
    let rhs = nfv.mul(&a);
    Ok(Outcome::compare(&lhs, &rhs))
}

const SIGN_SAMPLE_MAX: i64 = 40;
const SIGN_PRECISION: usize = 256;

fn at(p: &Poly, x: i64) -> BigRational {
    p.eval_rational(&int(x)).re
}

fn shift(p: &Poly, k: i64) -> Poly {
    p.shift(&Gq::from_int(k))
}

fn w2_product(w: &Poly, count: i64) -> Poly {
    (0..count).fold(Poly::one(), |acc, j| &acc * &(&shift(w, j) * &shift(w, j + 1)))
}

/// Signed real-shift ratio identity for a sign-definite `W = W_C[f]` with sign `ε`:
///
/// `W_C[f,u,v]/√(W_C[f,u](x) W_C[f,u](x+1))
///   = εᵐ (W(x)W(x+m+1)/(W(x+1)W(x+m)))^{1/4} · W_C[F/w, F_v/w]/√(W_C[F/w](x) W_C[F/w](x+1))`.
///
/// The fourth power is compared exactly. The sign is then checked numerically at the first
/// integer point where every radicand is positive and `W` keeps one sign on the stencil.
pub fn check_signed_ratio(fs: &[Poly], us: &[Poly], v: &Poly, ctx: &Ctx) -> Result<Outcome> {
    if us.is_empty() {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if fs.iter().chain(us).chain(std::iter::once(v)).any(|p| !p.is_real()) {
        return Err(Error::InvalidParameter("signed identity needs real coefficients".into()));
    }
    let m = us.len() as i64;
    let w = ctx.cas_real(fs, false)?;
    if w.is_zero() {
        return Err(Error::LinearDependence("W_C[f] vanishes identically".into()));
    }
    let fu: Vec<Poly> = fs.iter().chain(us).cloned().collect();
    let mut fuv = fu.clone();
    fuv.push(v.clone());
    let a = ctx.cas_real(&fu, false)?;
    let av = ctx.cas_real(&fuv, true)?;
    let lift = |u: &Poly| -> Result<Poly> {
        let mut list = fs.to_vec();
        list.push(u.clone());
        ctx.cas_real(&list, false)
    };
    let mut big_f = us.iter().map(lift).collect::<Result<Vec<_>>>()?;
    let wf = ctx.cas_real(&big_f, false)?;
    big_f.push(lift(v)?);
    let wfv = ctx.cas_real(&big_f, false)?;

    let sq = |p: &Poly| p * p;
    let p_m = w2_product(&w, m);
    let p_m1 = w2_product(&w, m + 1);
    let lhs = &(&(&sq(&sq(&av)) * &shift(&w, 1)) * &shift(&w, m)) * &(&sq(&p_m1) * &sq(&(&wf * &shift(&wf, 1))));
    let rhs = &(&(&sq(&(&a * &shift(&a, 1))) * &w) * &shift(&w, m + 1)) * &(&sq(&sq(&wfv)) * &(&p_m * &shift(&p_m, 1)));
    ctx.guard(&lhs)?;
    let exact = Outcome::compare(&lhs, &rhs);
    if !exact.pass {
        return Ok(exact);
    }

    let prec = SIGN_PRECISION;
    let fl = |q: &BigRational| BigFloat::from_rational(q, prec);
    for x0 in 0..=SIGN_SAMPLE_MAX {
        let ws: Vec<BigRational> = (0..=m + 1).map(|j| at(&w, x0 + j)).collect();
        let eps = if ws[0].is_positive() { 1 } else { -1 };
        if ws.iter().any(|q| q.is_zero() || q.is_positive() != (eps == 1)) {
            continue;
        }
        let a_prod = at(&a, x0) * at(&a, x0 + 1);
        let wf_prod = at(&wf, x0) * at(&wf, x0 + 1);
        let av0 = at(&av, x0);
        if !a_prod.is_positive() || !wf_prod.is_positive() || av0.is_zero() {
            continue;
        }
        let root_w = |y: i64| (fl(&at(&w, y)) * fl(&at(&w, y + 1))).sqrt();
        let w_prod = |from: i64, count: i64| (0..count).fold(BigFloat::one(prec), |acc, j| acc * root_w(from + j));
        let left = &fl(&av0) / &fl(&a_prod).sqrt();
        let ratio = &(&fl(&ws[0]) * &fl(&ws[(m + 1) as usize])) / &(&fl(&ws[1]) * &fl(&ws[m as usize]));
        let quarter = ratio.sqrt().sqrt();
        let top = &fl(&at(&wfv, x0)) / &w_prod(x0, m + 1);
        let den = (&(&fl(&at(&wf, x0)) / &w_prod(x0, m)) * &(&fl(&at(&wf, x0 + 1)) / &w_prod(x0 + 1, m))).sqrt();
        let mut sign = if eps == -1 && m % 2 == 1 { -1 } else { 1 };
        if ctx.epsilon_flipped() {
            sign = -sign;
        }
        let mut right = &(&quarter * &top) / &den;
        if sign < 0 {
            right = -right;
        }
        let dev = left.rel_diff(&right);
        let tol = BigFloat::from_i64(2, prec).powi(-(prec as i64 - 40));
        let pass = dev < tol;
        return Ok(Outcome {
            lhs: left.to_sci_string(30),
            rhs: right.to_sci_string(30),
            pass,
            note: Some(format!("sign check at x={x0}, epsilon={eps}, deviation {}", dev.to_sci_string(3))),
            inconclusive: false,
        });
    }
    Ok(Outcome {
        lhs: exact.lhs,
        rhs: exact.rhs,
        pass: true,
        note: Some(format!("fourth powers agree; no admissible sign sample in 0..={SIGN_SAMPLE_MAX}")),
        inconclusive: true,
    })
}

/// Rows `(j, s, Σ_r (-1)^r C(j-1,r)(r-(j-1)/2)^s, (-1)^{j-1}(j-1)! δ_{s,j-1})`.
pub fn sum_formula_table(j_max: u32) -> Vec<(u32, u32, BigRational, BigRational)> {
    let mut rows = Vec::new();
    for j in 1..=j_max {
        let n = u64::from(j - 1);
        let centre = BigRational::new(BigInt::from(n), BigInt::from(2));
        for s in 0..j {
            let mut sum = BigRational::zero();
            for r in 0..=n {
                let term = BigRational::from_integer(binomial(n, r)) * pow_rat(&(int(r as i64) - &centre), s as i32);
                if r % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            let expected = if u64::from(s) == n {
                let f = BigRational::from_integer(factorial(n));
                if n % 2 == 0 {
                    f
                } else {
                    -f
                }
            } else {
                BigRational::zero()
            };
            rows.push((j, s, sum, expected));
        }
    }
    rows
}

pub fn check_sum_formula(j_max: u32) -> Result<Outcome> {
    if j_max < 1 {
        return Err(Error::InvalidParameter("jMax must be at least 1".into()));
    }
    let rows = sum_formula_table(j_max);
    let join = |pick: &dyn Fn(&(u32, u32, BigRational, BigRational)) -> &BigRational| {
        rows.iter().map(|r| format_rational(pick(r))).collect::<Vec<_>>().join(",")
    };
    let lhs = join(&|r| &r.2);
    let rhs = join(&|r| &r.3);
    let pass = rows.iter().all(|r| r.2 == r.3);
    Ok(Outcome { lhs, rhs, pass, note: Some(format!("{} (j,s) pairs", rows.len())), inconclusive: false })
}

/// `γ^{-n(n-1)/2} W_γ[f] - W[f]` at `γ = γ₀/2^k`, `k = 0..=halvings`.
pub fn classical_limit_errors(fs: &[Poly], gamma0: &BigRational, halvings: u32, ctx: &Ctx) -> Result<Vec<Poly>> {
    if !gamma0.is_positive() {
        return Err(Error::InvalidParameter("gamma0 must be positive".into()));
    }
    let n = fs.len() as i32;
    let w = wronskian(fs);
    let mut gamma = gamma0.clone();
    let mut out = Vec::new();
    for _ in 0..=halvings {
        let scale = Gq::real(pow_rat(&gamma, -(n * (n - 1) / 2)));
        out.push(&ctx.cas_imag(fs, &gamma, true)?.scale(&scale) - &w);
        gamma /= int(2);
    }
    Ok(out)
}

/// Each coefficient of the error must shrink by at least 3/2 over the last halving.
pub fn check_classical_limit(fs: &[Poly], gamma0: &BigRational, halvings: u32, ctx: &Ctx) -> Result<Outcome> {
    if halvings < 1 {
        return Err(Error::InvalidParameter("at least one halving is needed".into()));
    }
    let errs = classical_limit_errors(fs, gamma0, halvings, ctx)?;
    let (prev, last) = (&errs[errs.len() - 2], &errs[errs.len() - 1]);
    let len = prev.coeffs().len().max(last.coeffs().len());
    let bound = BigRational::new(9.into(), 4.into());
    let mut pass = true;
    let mut order = f64::INFINITY;
    for k in 0..len {
        let (a, b) = (prev.coeff(k).norm_sqr(), last.coeff(k).norm_sqr());
        if b.is_zero() {
            continue;
        }
        if a < &b * &bound {
            pass = false;
        }
        let r = BigFloat::from_rational(&(a / b), 64).to_f64();
        order = order.min(0.5 * r.log2());
    }
    let note = if order.is_finite() { format!("observed order {order:.3}") } else { "error vanishes".into() };
    Ok(Outcome { lhs: last.to_string(), rhs: "0".into(), pass, note: Some(note), inconclusive: false })
}
