use rayon::prelude::*;

use crate::error::{Error, Result};

use super::checks::*;
use super::{canonical, sample_instance, CheckReport, Ctx, Fault, IdentityId, Instance, Outcome, Params, SamplerConfig, Status, Witness};

/// Runs one identity on explicit inputs.
pub fn check_instance(id: IdentityId, inst: &Instance, ctx: &Ctx) -> Result<Outcome> {
    use IdentityId::*;
    match id {
        WronskianQuotient => check_wronskian_quotient(&inst.fs_exp()?.remove(0), &inst.g_spec()?.exp()?, ctx),
        WronskianOneReduction => check_wronskian_one_reduction(&inst.fs_exp()?, ctx),
        WronskianGauge => check_wronskian_gauge(&inst.fs_exp()?, &inst.g_spec()?.exp()?, ctx),
        WronskianNesting => check_wronskian_nesting(&inst.fs_exp()?, &inst.g_spec()?.exp()?, ctx),
        WronskianTheorem => check_wronskian_theorem(&inst.fs_exp()?, &inst.us_exp()?, ctx),
        WronskianCorollary => check_wronskian_corollary(&inst.fs_exp()?, &inst.us_exp()?, ctx),
        CasImagQuotient => check_cas_imag_quotient(&first(inst)?, &inst.g_spec()?.poly()?, &inst.gamma()?, ctx),
        CasImagOneReduction => check_cas_imag_one_reduction(&inst.fs_poly()?, &inst.gamma()?, ctx),
        CasImagGauge => check_cas_imag_gauge(&inst.fs_poly()?, &inst.g_spec()?.poly()?, &inst.gamma()?, ctx),
        CasImagNesting => check_cas_imag_nesting(&inst.fs_poly()?, &inst.g_spec()?.poly()?, &inst.gamma()?, ctx),
        CasImagTheorem => check_cas_imag_theorem(&inst.fs_poly()?, &inst.us_poly()?, &inst.gamma()?, ctx),
        CasImagCorollary => check_cas_imag_corollary(&inst.fs_poly()?, &inst.us_poly()?, &inst.gamma()?, ctx),
        CasRealQuotient => check_cas_real_quotient(&first(inst)?, &inst.g_spec()?.poly()?, ctx),
        CasRealOneReduction => check_cas_real_one_reduction(&inst.fs_poly()?, ctx),
        CasRealGauge => check_cas_real_gauge(&inst.fs_poly()?, &inst.g_spec()?.poly()?, ctx),
        CasRealNesting => check_cas_real_nesting(&inst.fs_poly()?, &inst.g_spec()?.poly()?, ctx),
        CasRealTheorem => check_cas_real_theorem(&inst.fs_poly()?, &inst.us_poly()?, ctx),
        CasRealCorollary => check_cas_real_corollary(&inst.fs_poly()?, &inst.us_poly()?, ctx),
        Eq1 => check_eq1(&inst.fs_exp()?, &inst.us_exp()?, ctx),
        Eq2 => check_eq2(&inst.fs_poly()?, &inst.us_poly()?, &inst.gamma()?, ctx),
        Eq3 => check_eq3(&inst.fs_poly()?, &inst.us_poly()?, ctx),
        WroId => check_wro_id(&inst.fs_exp()?, &inst.us_exp()?, &inst.v_spec()?.exp()?, ctx),
        CasRealSignedRatio => check_signed_ratio(&inst.fs_poly()?, &inst.us_poly()?, &inst.v_spec()?.poly()?, ctx),
        SumFormula => check_sum_formula(inst.j_max.unwrap_or(10)),
        ClassicalLimit => check_classical_limit(&inst.fs_poly()?, &inst.gamma()?, inst.halvings.unwrap_or(4), ctx),
    }
}

fn first(inst: &Instance) -> Result<crate::exact::Poly> {
    inst.fs.first().ok_or_else(|| Error::Config("instance lacks f".into()))?.poly()
}

/// Runs one identity and packages the outcome as a report.
pub fn check(id: IdentityId, inst: &Instance, fault: Option<Fault>, budget_bits: u64, trial: u64, seed: u64) -> CheckReport {
    let ctx = Ctx::new(fault, budget_bits);
    let params = Params { n: inst.fs.len(), m: inst.us.len(), degrees: inst.degrees(), gamma: inst.gamma.clone(), seed };
    let witness = Witness { identity: id, trial, seed, instance: inst.clone(), fault };
    let (lhs, rhs, pass, status, detail) = match check_instance(id, inst, &ctx) {
        Ok(o) => {
            let status = if !o.pass {
                Status::Fail
            } else if o.inconclusive {
                Status::Inconclusive
            } else {
                Status::Pass
            };
            (o.lhs, o.rhs, o.pass, status, o.note)
        }
        Err(e @ (Error::BudgetExceeded { .. } | Error::NoSamplePoint)) => {
            (String::new(), String::new(), false, Status::Inconclusive, Some(e.to_string()))
        }
        Err(e) => (String::new(), String::new(), false, Status::Fail, Some(e.to_string())),
    };
    CheckReport {
        identity: id,
        trial,
        params,
        lhs: canonical(lhs),
        rhs: canonical(rhs),
        pass,
        status,
        detail,
        witness: (status == Status::Fail).then_some(witness),
    }
}

/// Samples and checks `cfg.trials` instances per identity in parallel; output is sorted
/// by `(identity, trial)` so it does not depend on scheduling.
pub fn run_suite(ids: &[IdentityId], cfg: &SamplerConfig, fault: Option<Fault>) -> Vec<CheckReport> {
    let jobs: Vec<(IdentityId, u64)> = ids
        .iter()
        .flat_map(|&id| {
            let trials = if id == IdentityId::SumFormula { 1 } else { cfg.trials };
            (0..trials).map(move |t| (id, t))
        })
        .collect();
    let mut reports: Vec<CheckReport> = jobs
        .par_iter()
        .map(|&(id, t)| check(id, &sample_instance(id, cfg, t), fault, cfg.budget_bits, t, cfg.master_seed))
        .collect();
    reports.sort_by_key(|r| (r.identity, r.trial));
    reports
}

/// Re-runs a recorded witness.
pub fn replay(w: &Witness, budget_bits: u64) -> CheckReport {
    check(w.identity, &w.instance, w.fault, budget_bits, w.trial, w.seed)
}
