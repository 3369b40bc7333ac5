//! Command-line orchestration: configuration, suite execution, JSON/CSV output, replay.

pub mod config;

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;
use serde::{Deserialize, Serialize};

pub use config::{parse_fault, RunConfig, Subcommand, PRECISION_ENV};

use crate::error::{Error, Result};
use crate::exact::rational::parse_rational;
use crate::identities::{self, CheckReport, Fault, IdentityId, SamplerConfig, Status, Witness};
use crate::idqm::{self, SweepConfig};
use crate::oqm::{self, OqmModel};
use crate::rdqm::{self, RdqmConfig, RdqmRun};
use crate::report::{LabReport, PipelineWitness};

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "casorati", version, about = "Wronskian/Casoratian identities and multi-step Darboux transformations")]
struct Args {
    /// Suite to run; may be omitted with --replay.
    #[arg(value_enum)]
    subcommand: Option<Subcommand>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated identity names to restrict the identity suite.
    #[arg(long)]
    identities: Option<String>,
    /// casoratian-entry[:row:col], epsilon-parity or eq3-shift.
    #[arg(long)]
    fault: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Virtual seeds: labels for oqm, energies for rdqm.
    #[arg(long, allow_hyphen_values = true)]
    dv: Option<String>,
    #[arg(long)]
    de: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    precision: Option<String>,
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    truncation: Option<String>,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for CSV exports of the rdqm grid functions and spectrum.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Flat key = value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Witness JSON (or a report carrying one) to re-run.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    fn add(&mut self, s: Status) {
        self.total += 1;
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            EXIT_FAIL
        } else if self.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        }
    }
}

/// The only field that varies between runs of the same configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timestamp {
    pub unix_seconds: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub version: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub identities: Vec<CheckReport>,
    pub pipelines: Vec<LabReport>,
    pub timestamp: Timestamp,
}

/// Results of [`execute`] before they are wrapped in a [`RunReport`].
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub identities: Vec<CheckReport>,
    pub pipelines: Vec<LabReport>,
    pub rdqm: Option<RdqmRun>,
}

impl Outcome {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        self.identities.iter().for_each(|r| s.add(r.status));
        self.pipelines.iter().for_each(|r| s.add(r.status));
        s
    }
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::Parse(_) | Error::InvalidParameter(_))
}

fn failed(check: &str, e: &Error) -> LabReport {
    LabReport::new(check, &[], "error".into(), "no error".into(), false).with_detail(e.to_string())
}

fn run_identities(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let ids: Vec<IdentityId> = match &cfg.identities {
        Some(names) => names
            .iter()
            .map(|n| IdentityId::parse(n).ok_or_else(|| Error::Config(format!("unknown identity {n:?}"))))
            .collect::<Result<_>>()?,
        None => IdentityId::ALL.to_vec(),
    };
    let sampler = SamplerConfig { trials: cfg.trials, master_seed: cfg.seed, budget_bits: cfg.budget_bits, ..Default::default() };
    Ok(identities::run_suite(&ids, &sampler, cfg.fault))
}

/// Default oQM sweep: every `D_v ⊆ {0, 1}`, `D_e = {1, 2}`, `n ∈ {0, 3, 4}`.
fn run_oqm(cfg: &RunConfig) -> Result<Vec<LabReport>> {
    let dv_sets: Vec<Vec<usize>> = match &cfg.dv {
        Some(dv) => vec![dv
            .iter()
            .map(|s| s.parse().map_err(|_| Error::Config(format!("oqm dv label {s:?} is not a non-negative integer"))))
            .collect::<Result<_>>()?],
        None => vec![vec![], vec![0], vec![1], vec![0, 1]],
    };
    let de = cfg.de.clone().unwrap_or_else(|| vec![1, 2]);
    let ns = cfg.n.clone().unwrap_or_else(|| vec![0, 3, 4]);
    let n_top = de.iter().chain(&ns).copied().max().unwrap_or(0);
    let v_top = dv_sets.iter().flatten().copied().max().unwrap_or(0);
    let model = OqmModel::harmonic(n_top + 1, v_top + 1)?;
    let mut out = Vec::new();
    for dv in &dv_sets {
        for &n in &ns {
            out.push(oqm::schrodinger_report(&model, dv, &de, n).unwrap_or_else(|e| failed("oqm-schrodinger", &e)));
            out.push(oqm::two_path_compare(&model, dv, &de, n).unwrap_or_else(|e| failed("oqm-two-path", &e)));
        }
        out.push(oqm::census_report(&model, dv, &de, n_top).unwrap_or_else(|e| failed("oqm-degree-census", &e)));
    }
    Ok(out)
}

fn run_idqm(cfg: &RunConfig) -> Result<Vec<LabReport>> {
    let gammas = cfg.gammas.iter().map(|g| parse_rational(g)).collect::<Result<Vec<_>>>()?;
    Ok(idqm::sweep(&SweepConfig { trials: cfg.idqm_trials, seed: cfg.seed, gammas, ..Default::default() }))
}

pub fn rdqm_config(cfg: &RunConfig) -> Result<RdqmConfig> {
    let base = RdqmConfig::default();
    Ok(RdqmConfig {
        beta: parse_rational(&cfg.beta)?,
        c: parse_rational(&cfg.c)?,
        precision: cfg.precision,
        window: cfg.window,
        truncation: cfg.truncation,
        eigenvalues: cfg.eigenvalues,
        virtual_energies: match &cfg.dv {
            Some(dv) => dv.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            None => base.virtual_energies,
        },
        deleted: cfg.de.clone().unwrap_or(base.deleted),
        states: cfg.n.clone().unwrap_or(base.states),
        compare_x_max: cfg.compare_x_max,
        two_path_tol_exp: cfg.two_path_tol_exp,
        spectrum_tol_exp: cfg.spectrum_tol_exp,
        sensitivity_tol_exp: cfg.sensitivity_tol_exp,
        flip_epsilon: cfg.fault == Some(Fault::EpsilonParity),
        ..base
    })
}

/// Runs the suites selected by `cfg.subcommand`. Configuration problems are errors; a
/// pipeline that breaks for any other reason yields a failing report.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let sub = cfg.subcommand;
    let on = |s: Subcommand| sub == s || sub == Subcommand::All;
    let mut out = Outcome::default();
    let pipeline = |name: &str, reports: Result<Vec<LabReport>>, out: &mut Outcome| -> Result<()> {
        let reports = match reports {
            Ok(r) => r,
            Err(e) if is_config_error(&e) => return Err(e),
            Err(e) => vec![failed(&format!("{name}-pipeline"), &e)],
        };
        let mut flat = cfg.to_flat();
        flat.insert("subcommand".into(), name.into());
        out.pipelines.extend(reports.into_iter().map(|mut r| {
            if r.status == Status::Fail {
                r.witness = Some(PipelineWitness { config: flat.clone(), check: r.check.clone(), params: r.params.clone() });
            }
            r
        }));
        Ok(())
    };
    if on(Subcommand::Identities) {
        out.identities = run_identities(cfg)?;
    }
    if on(Subcommand::Oqm) {
        pipeline("oqm", run_oqm(cfg), &mut out)?;
    }
    if on(Subcommand::Idqm) {
        pipeline("idqm", run_idqm(cfg), &mut out)?;
    }
    if on(Subcommand::Rdqm) {
        let run = rdqm_config(cfg).and_then(|c| rdqm::run(&c));
        let reports = run.as_ref().map(|r| r.reports.clone()).map_err(Clone::clone);
        pipeline("rdqm", reports, &mut out)?;
        out.rdqm = run.ok();
    }
    Ok(out)
}

pub fn report(cfg: &RunConfig, outcome: &Outcome, started: SystemTime, elapsed_ms: u128) -> RunReport {
    RunReport {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        summary: outcome.summary(),
        identities: outcome.identities.clone(),
        pipelines: outcome.pipelines.clone(),
        timestamp: Timestamp {
            unix_seconds: started.duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            elapsed_ms,
        },
    }
}

/// Executes a configuration and wraps the outcome in a timed [`RunReport`].
pub fn run_config(cfg: &RunConfig) -> Result<(RunReport, Outcome)> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let outcome = execute(cfg)?;
    let rep = report(cfg, &outcome, started, clock.elapsed().as_millis());
    Ok((rep, outcome))
}

fn write_csv(dir: &Path, run: &RdqmRun, precision: usize) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (n, phi) in &run.eigenfunctions {
        let text = rdqm::grid_csv(&format!("phi_D{n}"), phi, precision)?;
        std::fs::write(dir.join(format!("phi_D{n}.csv")), text).map_err(io)?;
    }
    if !run.spectrum.is_empty() {
        std::fs::write(dir.join("spectrum.csv"), rdqm::spectrum_csv("H_D eigenvalue", &run.spectrum, precision)?).map_err(io)?;
    }
    Ok(())
}

/// A replayable record: identity witness or pipeline witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyWitness {
    Identity(Witness),
    Pipeline(PipelineWitness),
}

/// Reads a witness; a report object carrying a `witness` field is accepted too.
pub fn load_witness(text: &str) -> Result<AnyWitness> {
    let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("witness: {e}")))?;
    if let Some(w) = v.get("witness") {
        v = w.clone();
    }
    serde_json::from_value(v).map_err(|e| Error::Config(format!("witness: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Io(e.to_string()))
}

/// Re-runs a witness and returns the reproduced report as JSON together with its status.
pub fn replay(w: &AnyWitness) -> Result<(serde_json::Value, Status)> {
    match w {
        AnyWitness::Identity(w) => {
            let r = identities::replay(w, identities::DEFAULT_BUDGET_BITS);
            Ok((to_json(&r)?, r.status))
        }
        AnyWitness::Pipeline(w) => {
            let sub = w.config.get("subcommand").map(String::as_str).unwrap_or("all");
            let mut cfg = RunConfig::new(Subcommand::parse(sub)?)?;
            for (k, v) in &w.config {
                cfg.set(k, v)?;
            }
            let out = execute(&cfg)?;
            let r = out
                .pipelines
                .into_iter()
                .find(|r| r.check == w.check && r.params == w.params)
                .ok_or_else(|| Error::Config(format!("no {} report with the recorded parameters", w.check)))?;
            let status = r.status;
            Ok((to_json(&r)?, status))
        }
    }
}

pub fn exit_for(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            // A closed reader (e.g. `| head`) is not an error for the run.
            match writeln!(std::io::stdout(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

/// Builds the configuration: defaults, then the environment, then `--config`, then flags.
fn configure(args: &Args, sub: Subcommand) -> Result<RunConfig> {
    let mut cfg = RunConfig::new(sub)?;
    if let Some(p) = &args.config {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
        cfg.apply_file(&text)?;
        cfg.subcommand = sub;
    }
    let flags = [
        ("trials", &args.trials),
        ("seed", &args.seed),
        ("identities", &args.identities),
        ("fault", &args.fault),
        ("gamma", &args.gamma),
        ("beta", &args.beta),
        ("c", &args.c),
        ("dv", &args.dv),
        ("de", &args.de),
        ("n", &args.n),
        ("precision", &args.precision),
        ("window", &args.window),
        ("truncation", &args.truncation),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if let Some(p) = &args.out {
        cfg.out = Some(p.display().to_string());
    }
    if let Some(p) = &args.csv {
        cfg.csv = Some(p.display().to_string());
    }
    Ok(cfg)
}

fn run_parsed(args: Args) -> Result<i32> {
    if let Some(p) = &args.replay {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
        let (value, status) = replay(&load_witness(&text)?)?;
        let text = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
        emit(args.out.as_deref(), &text)?;
        eprintln!("replay: {status:?}");
        return Ok(exit_for(status));
    }
    let sub = args.subcommand.ok_or_else(|| Error::Config("a subcommand is required".into()))?;
    let cfg = configure(&args, sub)?;
    let (rep, outcome) = run_config(&cfg)?;
    let text = serde_json::to_string_pretty(&rep).map_err(|e| Error::Io(e.to_string()))?;
    emit(cfg.out.as_deref().map(Path::new), &text)?;
    if let (Some(dir), Some(run)) = (&cfg.csv, &outcome.rdqm) {
        write_csv(Path::new(dir), run, cfg.precision)?;
    }
    for r in outcome.identities.iter().filter(|r| r.status != Status::Pass) {
        eprintln!("{:?}: {} trial {}", r.status, r.identity, r.trial);
    }
    for r in outcome.pipelines.iter().filter(|r| r.status != Status::Pass) {
        eprintln!("{:?}: {} {:?}", r.status, r.check, r.params);
    }
    let s = &rep.summary;
    eprintln!("{}: {} checks, {} pass, {} fail, {} inconclusive", sub.name(), s.total, s.pass, s.fail, s.inconclusive);
    Ok(s.exit_code())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_config_error(&e) || matches!(e, Error::Io(_)) {
                EXIT_CONFIG
            } else {
                EXIT_FAIL
            }
        }
    }
}
