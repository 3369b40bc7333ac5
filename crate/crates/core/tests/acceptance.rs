//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits non-zero if
//! any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use casorati::cli::{self, AnyWitness, RunConfig, Subcommand};
use casorati::exact::BigRational;
use casorati::identities::{
    self, classical_limit_errors, sum_formula_table, CheckReport, Ctx, Fault, IdentityId, SamplerConfig, Status,
    DEFAULT_BUDGET_BITS,
};
use casorati::report::LabReport;
use num_traits::{ToPrimitive, Zero};

struct Line {
    pass: bool,
    text: String,
}

fn tally_identities(rs: &[CheckReport]) -> (usize, usize, usize) {
    let count = |s| rs.iter().filter(|r| r.status == s).count();
    (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive))
}

fn tally_labs(rs: &[LabReport]) -> (usize, usize, usize) {
    let count = |s| rs.iter().filter(|r| r.status == s).count();
    (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive))
}

fn sampler(trials: u64) -> SamplerConfig {
    SamplerConfig { trials, ..Default::default() }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn criterion_1() -> Line {
    let t = Instant::now();
    let rs = identities::run_suite(IdentityId::core(), &sampler(200), None);
    let took = t.elapsed();
    let (p, f, i) = tally_identities(&rs);
    let per_id = IdentityId::core().iter().all(|id| rs.iter().filter(|r| r.identity == *id).count() == 200);
    Line {
        pass: f == 0 && i == 0 && per_id && took <= Duration::from_secs(120),
        text: format!("18 core identities x 200 trials: {p} pass, {f} fail, {i} inconclusive in {:.1} s (limit 120 s)", secs(took)),
    }
}

fn criterion_2() -> Line {
    let ids = [IdentityId::Eq1, IdentityId::Eq2, IdentityId::Eq3];
    let rs = identities::run_suite(&ids, &sampler(200), None);
    let (p, f, i) = tally_identities(&rs);
    // Evaluating the x+1 factor at x must break Eq3.
    let shifted = identities::run_suite(&[IdentityId::Eq3], &sampler(200), Some(Fault::Eq3Shift));
    let (_, sf, _) = tally_identities(&shifted);
    Line {
        pass: f == 0 && i == 0 && sf > 0,
        text: format!("m=2 specializations Eq1/Eq2/Eq3 x 200: {p} pass, {f} fail, {i} inconclusive; without the x+1 shift {sf}/200 fail"),
    }
}

/// `Σ_r (-1)^r C(n,r) (2r-n)^s`, in machine integers.
fn scaled_sum(n: u32, s: u32) -> i128 {
    let mut c: i128 = 1;
    let mut sum = 0i128;
    for r in 0..=n as i128 {
        let term = c * (2 * r - n as i128).pow(s);
        sum += if r % 2 == 0 { term } else { -term };
        c = c * (n as i128 - r) / (r + 1);
    }
    sum
}

fn criterion_3() -> Line {
    let rows = sum_formula_table(10);
    let mut bad = 0;
    for (j, s, lhs, rhs) in &rows {
        let n = j - 1;
        let fact: i128 = (1..=n as i128).product();
        let expect = if *s == n { if n % 2 == 0 { fact } else { -fact } } else { 0 };
        let oracle = BigRational::new(scaled_sum(n, *s).into(), (1i128 << s).into());
        if *lhs != oracle || *rhs != BigRational::from_integer(expect.into()) || lhs != rhs {
            bad += 1;
        }
    }
    let expected_rows = (1..=10).sum::<usize>();
    let suite = identities::run_suite(&[IdentityId::SumFormula], &sampler(1), None);
    let ok = bad == 0 && rows.len() == expected_rows && suite.iter().all(|r| r.status == Status::Pass);
    Line { pass: ok, text: format!("sum formula, j <= 10: {} (j,s) pairs, {bad} mismatches against the integer oracle", rows.len()) }
}

fn norm(p: &casorati::exact::Poly) -> f64 {
    p.coeffs().iter().map(|c| c.norm_sqr().to_f64().unwrap_or(f64::INFINITY)).sum::<f64>().sqrt()
}

fn criterion_4() -> Line {
    let cfg = sampler(50);
    let rs = identities::run_suite(&[IdentityId::ClassicalLimit], &cfg, None);
    let (p, f, i) = tally_identities(&rs);
    let ctx = Ctx::default();
    let mut worst = f64::INFINITY;
    let mut exact = 0;
    for t in 0..50 {
        let inst = identities::sample_instance(IdentityId::ClassicalLimit, &cfg, t);
        let fs: Vec<_> = inst.fs.iter().map(|f| f.poly().unwrap()).collect();
        let errs = classical_limit_errors(&fs, &BigRational::from_integer(1.into()), 4, &ctx).unwrap();
        if errs[0].coeffs().iter().all(|c| c.norm_sqr().is_zero()) {
            exact += 1;
            continue;
        }
        let order = (norm(&errs[0]) / norm(&errs[4])).log2() / 4.0;
        worst = worst.min(order);
    }
    Line {
        pass: f == 0 && i == 0 && worst >= 1.0,
        text: format!(
            "classical limit, 50 triples, 4 halvings from gamma=1: {p} pass, {f} fail, {i} inconclusive; min observed order {worst:.3} ({exact} exact at gamma=1)"
        ),
    }
}

fn pipeline(sub: Subcommand, settings: &[(&str, &str)]) -> (Vec<LabReport>, Duration) {
    let mut cfg = RunConfig::new(sub).unwrap();
    for (k, v) in settings {
        cfg.set(k, v).unwrap();
    }
    let t = Instant::now();
    let out = cli::execute(&cfg).unwrap();
    (out.pipelines, t.elapsed())
}

fn criterion_5() -> Line {
    let (rs, took) = pipeline(Subcommand::Oqm, &[("de", "1,2"), ("n", "0,3,4")]);
    let (p, f, i) = tally_labs(&rs);
    let kinds = ["oqm-schrodinger", "oqm-two-path", "oqm-degree-census"];
    let covered = kinds.iter().all(|k| rs.iter().any(|r| r.check == *k));
    Line {
        pass: f == 0 && i == 0 && covered && rs.len() == 4 * 7 && took <= Duration::from_secs(60),
        text: format!("oQM harmonic, dV in subsets of {{0,1}}, dE={{1,2}}, n in {{0,3,4}}: {p} pass, {f} fail, {i} inconclusive in {:.1} s (limit 60 s)", secs(took)),
    }
}

const RDQM: [(&str, &str); 13] = [
    ("beta", "2"),
    ("c", "1/3"),
    ("precision", "256"),
    ("window", "80"),
    ("truncation", "60"),
    ("eigenvalues", "5"),
    ("dv", "-0.6,-1.7"),
    ("de", "1,2"),
    ("n", "0,3"),
    ("compare_x_max", "40"),
    ("two_path_tol_exp", "25"),
    ("spectrum_tol_exp", "8"),
    ("sensitivity_tol_exp", "9"),
];

fn rdqm_settings() -> Vec<(&'static str, &'static str)> {
    RDQM.to_vec()
}

fn criterion_6() -> Line {
    let (rs, took) = pipeline(Subcommand::Rdqm, &rdqm_settings());
    let (p, f, i) = tally_labs(&rs);
    let kinds = ["rdqm-model-residual", "rdqm-two-path", "rdqm-chain", "rdqm-spectrum", "rdqm-sign-conjecture"];
    let covered = kinds.iter().all(|k| rs.iter().any(|r| r.check == *k));
    let sign = rs
        .iter()
        .filter(|r| r.check == "rdqm-two-path")
        .filter_map(|r| r.detail.as_deref())
        .filter_map(|d| d.split(" orderings").next())
        .filter_map(|d| d.rsplit(' ').next())
        .map(String::from)
        .collect::<Vec<_>>()
        .join(", ");
    Line {
        pass: f == 0 && i == 0 && covered && took <= Duration::from_secs(300),
        text: format!(
            "rdQM Meixner beta=2 c=1/3, 256 bits: {p} pass, {f} fail, {i} inconclusive; sign identity {sign} in {:.1} s (limit 300 s)",
            secs(took)
        ),
    }
}

fn criterion_7() -> Line {
    let (rs, _) = pipeline(Subcommand::Idqm, &[("gamma", "1,1/2")]);
    let (p, f, i) = tally_labs(&rs);
    let mut per_check: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rs {
        *per_check.entry(r.check.as_str()).or_default() += 1;
    }
    let counts_ok = per_check.len() == 3 && per_check.values().all(|&n| n == 50);
    Line {
        pass: f == 0 && i == 0 && counts_ok,
        text: format!("idQM algebra, l,m <= 2, gamma in {{1,1/2}}: {p} pass, {f} fail, {i} inconclusive over {per_check:?}"),
    }
}

/// Failures with a witness that reproduces the failure on replay.
fn replayed_failures(rs: &[CheckReport]) -> (usize, usize) {
    let fails: Vec<_> = rs.iter().filter(|r| r.status == Status::Fail).collect();
    let ok = fails
        .iter()
        .filter(|r| r.witness.as_ref().is_some_and(|w| identities::replay(w, DEFAULT_BUDGET_BITS).status == Status::Fail))
        .count();
    (fails.len(), ok)
}

fn criterion_8() -> Line {
    let mut parts = Vec::new();
    let mut pass = true;
    let families: [(&str, &[IdentityId]); 3] = [
        ("wronskian", &IdentityId::core()[0..6]),
        ("cas-imag", &IdentityId::core()[6..12]),
        ("cas-real", &IdentityId::core()[12..18]),
    ];
    for (row, col) in [(0, 0), (1, 0), (0, 1)] {
        for (name, ids) in families {
            let rs = identities::run_suite(ids, &sampler(20), Some(Fault::CasoratianEntry { row, col }));
            let (fails, replayed) = replayed_failures(&rs);
            pass &= fails > 0 && replayed == fails;
            parts.push(format!("entry({row},{col}) {name} {replayed}/{fails}"));
        }
    }

    let rs = identities::run_suite(&[IdentityId::CasRealSignedRatio], &sampler(20), Some(Fault::EpsilonParity));
    let (fails, replayed) = replayed_failures(&rs);
    pass &= fails > 0 && replayed == fails;
    parts.push(format!("epsilon signed-ratio {replayed}/{fails}"));

    let mut settings = rdqm_settings();
    settings.push(("fault", "epsilon-parity"));
    let (labs, _) = pipeline(Subcommand::Rdqm, &settings);
    let failed: Vec<_> = labs.iter().filter(|r| r.status == Status::Fail).collect();
    let replayed = failed
        .iter()
        .take(1)
        .filter(|r| {
            r.witness.as_ref().is_some_and(|w| {
                matches!(cli::replay(&AnyWitness::Pipeline(w.clone())), Ok((_, Status::Fail)))
            })
        })
        .count();
    pass &= !failed.is_empty() && failed.iter().all(|r| r.witness.is_some()) && replayed == 1;
    parts.push(format!("epsilon rdqm {} fail, first replayed {replayed}/1", failed.len()));

    let rs = identities::run_suite(&[IdentityId::Eq3], &sampler(20), Some(Fault::Eq3Shift));
    let (fails, replayed) = replayed_failures(&rs);
    pass &= fails > 0 && replayed == fails;
    parts.push(format!("eq3 x+1 shift {replayed}/{fails}"));

    Line { pass, text: format!("negative controls (replayed/failed): {}", parts.join("; ")) }
}

fn main() {
    let criteria: [(u32, fn() -> Line); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let line = f();
        failed += usize::from(!line.pass);
        println!("criterion {n}: {} - {}", if line.pass { "PASS" } else { "FAIL" }, line.text);
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
