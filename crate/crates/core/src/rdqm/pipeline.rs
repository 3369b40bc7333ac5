use num_rational::BigRational;

use super::deform::{deformed_potentials_bd, sign_conjecture_check};
use super::{
    build_meixner, darboux_chain, deformed_eigenfunction, residual_tolerance, spectrum_check, ten_pow_neg,
    two_path_compare_rdqm,
};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, int, rat};
use crate::exact::BigFloat;
use crate::grid::GridFn;
use crate::report::LabReport;

/// Parameters of one rdQM pipeline run. Tolerances are powers of ten: `25` means `1e-25`.
#[derive(Clone, Debug, PartialEq)]
pub struct RdqmConfig {
    pub beta: BigRational,
    pub c: BigRational,
    pub precision: usize,
    pub window: usize,
    pub truncation: usize,
    pub eigenvalues: usize,
    pub virtual_energies: Vec<BigRational>,
    pub deleted: Vec<usize>,
    pub states: Vec<usize>,
    pub compare_x_max: usize,
    pub model_tol_exp: usize,
    pub two_path_tol_exp: usize,
    pub spectrum_tol_exp: usize,
    pub sensitivity_tol_exp: usize,
    pub flip_epsilon: bool,
}

impl Default for RdqmConfig {
    fn default() -> Self {
        Self {
            beta: int(2),
            c: rat(1, 3),
            precision: crate::exact::bigfloat::DEFAULT_PRECISION,
            window: 80,
            truncation: 60,
            eigenvalues: 5,
            virtual_energies: vec![rat(-3, 5), rat(-17, 10)],
            deleted: vec![1, 2],
            states: vec![0, 3],
            compare_x_max: 40,
            model_tol_exp: 30,
            two_path_tol_exp: 25,
            spectrum_tol_exp: 8,
            sensitivity_tol_exp: 9,
            flip_epsilon: false,
        }
    }
}

/// Reports plus the grid data a run can export.
#[derive(Clone, Debug)]
pub struct RdqmRun {
    pub reports: Vec<LabReport>,
    pub eigenfunctions: Vec<(usize, GridFn<BigFloat>)>,
    pub spectrum: Vec<BigFloat>,
}

fn failed(check: &str, params: &[(&str, String)], e: impl std::fmt::Display) -> LabReport {
    LabReport::new(check, params, "error".into(), "no error".into(), false).with_detail(e.to_string())
}

/// Builds the model, deforms it and runs every rdQM check. Only model construction and
/// index-set or state validation abort the run; other errors become failing reports.
pub fn run(cfg: &RdqmConfig) -> Result<RdqmRun> {
    let p = cfg.precision;
    let n_max = cfg.deleted.iter().chain(&cfg.states).copied().max().unwrap_or(0) + 1;
    let model = build_meixner(&cfg.beta, &cfg.c, n_max, cfg.window, p)?;
    let set = model.index_set(&cfg.virtual_energies, &cfg.deleted)?;
    if let Some(n) = cfg.states.iter().find(|n| set.is_deleted(**n)) {
        return Err(Error::InvalidParameter(format!("state {n} is deleted by the index set")));
    }
    let base = [
        ("beta", format_rational(&cfg.beta)),
        ("c", format_rational(&cfg.c)),
        ("precision", p.to_string()),
        ("window", cfg.window.to_string()),
    ];
    let mut reports = Vec::new();

    let worst = model.residuals().iter().cloned().reduce(BigFloat::max).expect("n_max ≥ 0");
    let model_tol = ten_pow_neg(cfg.model_tol_exp, p);
    reports.push(LabReport::new(
        "rdqm-model-residual",
        &[&base[..], &[("n_max", n_max.to_string())]].concat(),
        format!("max relative residual {}", worst.to_sci_string(6)),
        format!("tolerance {}", model_tol.to_sci_string(3)),
        worst <= model_tol,
    ));

    let set_params = [
        &base[..],
        &[("dv", crate::report::list(&set.ev)), ("de", crate::report::list(&set.de))],
    ]
    .concat();
    let seeds = match model.seeds(&set) {
        Ok(s) => s,
        Err(e) => {
            reports.push(failed("rdqm-seeds", &set_params, e));
            return Ok(RdqmRun { reports, eigenfunctions: Vec::new(), spectrum: Vec::new() });
        }
    };
    reports.push(LabReport::new(
        "rdqm-seeds",
        &set_params,
        "virtual seeds of definite sign".into(),
        "virtual seeds of definite sign".into(),
        true,
    ));

    let pot = match deformed_potentials_bd(&model, &set, &seeds) {
        Ok((pot, pos)) => {
            let detail = pos.first_violation.map_or("B_D > 0, D_D > 0 except D_D(0) = 0".to_string(), |x| {
                format!("first violation at x = {x}")
            });
            reports.push(
                LabReport::new(
                    "rdqm-potentials-positive",
                    &set_params,
                    format!("positive = {}", pos.positive),
                    "positive = true".into(),
                    pos.positive,
                )
                .with_detail(detail),
            );
            Some(pot)
        }
        Err(e) => {
            reports.push(failed("rdqm-potentials-positive", &set_params, e));
            None
        }
    };

    match sign_conjecture_check(&seeds) {
        Ok((ok, bad)) => reports.push(
            LabReport::new(
                "rdqm-sign-conjecture",
                &set_params,
                format!("sgn W_C[seeds] = ε_D on window: {ok}"),
                "true".into(),
                ok,
            )
            .with_detail(bad.map_or("no violation".to_string(), |x| format!("first violation at x = {x}"))),
        ),
        Err(e) => reports.push(failed("rdqm-sign-conjecture", &set_params, e)),
    }

    let tol = ten_pow_neg(cfg.two_path_tol_exp, p);
    let res_tol = residual_tolerance(p);
    let shift = model.energy(set.mu());
    let mut eigenfunctions = Vec::new();
    for &n in &cfg.states {
        let np = [&set_params[..], &[("n", n.to_string())]].concat();
        match (deformed_eigenfunction(&model, &set, &seeds, n), &pot) {
            (Ok(phi), Some(pot)) => {
                match pot.residual(&phi, &model.energy(n), &shift) {
                    Ok(r) => reports.push(LabReport::new(
                        "rdqm-residual",
                        &np,
                        format!("relative residual {}", r.to_sci_string(6)),
                        format!("tolerance {}", res_tol.to_sci_string(3)),
                        r <= res_tol,
                    )),
                    Err(e) => reports.push(failed("rdqm-residual", &np, e)),
                }
                eigenfunctions.push((n, phi));
            }
            (Err(e), _) => reports.push(failed("rdqm-residual", &np, e)),
            (Ok(_), None) => reports.push(failed("rdqm-residual", &np, "deformed potentials unavailable")),
        }
        reports.push(
            two_path_compare_rdqm(&model, &set, &seeds, n, cfg.compare_x_max, &tol, cfg.flip_epsilon)
                .unwrap_or_else(|e| failed("rdqm-two-path", &np, e)),
        );
        reports.push(
            darboux_chain(&model, &set, &seeds, n, cfg.compare_x_max, &tol).unwrap_or_else(|e| failed("rdqm-chain", &np, e)),
        );
    }

    let spec_params = [&set_params[..], &[("N", cfg.truncation.to_string())]].concat();
    let spectrum = match spectrum_check(
        &model,
        &set,
        cfg.truncation,
        cfg.eigenvalues,
        &ten_pow_neg(cfg.spectrum_tol_exp, p),
        &ten_pow_neg(cfg.sensitivity_tol_exp, p),
    ) {
        Ok((mut r, values)) => {
            r.params.extend(base.iter().map(|(k, v)| (k.to_string(), v.clone())));
            reports.push(r);
            values
        }
        Err(e) => {
            reports.push(failed("rdqm-spectrum", &spec_params, e));
            Vec::new()
        }
    };
    Ok(RdqmRun { reports, eigenfunctions, spectrum })
}
