use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::bigfloat::DEFAULT_PRECISION;
use crate::exact::rational::parse_rational;
use crate::identities::{Fault, IdentityId, DEFAULT_BUDGET_BITS};

pub const PRECISION_ENV: &str = "CASORATI_PRECISION_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Identities,
    Oqm,
    Idqm,
    Rdqm,
    All,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Self::Identities => "identities",
            Self::Oqm => "oqm",
            Self::Idqm => "idqm",
            Self::Rdqm => "rdqm",
            Self::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [Self::Identities, Self::Oqm, Self::Idqm, Self::Rdqm, Self::All]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown subcommand {s:?}")))
    }
}

/// Everything a run depends on. A run is reproducible from this value alone.
///
/// `dv` holds virtual-state labels for `oqm` and virtual energies for `rdqm`; unset lists
/// fall back to each pipeline's defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub trials: u64,
    pub idqm_trials: usize,
    pub seed: u64,
    pub identities: Option<Vec<String>>,
    pub fault: Option<Fault>,
    pub budget_bits: u64,
    pub gammas: Vec<String>,
    pub beta: String,
    pub c: String,
    pub precision: usize,
    pub window: usize,
    pub truncation: usize,
    pub eigenvalues: usize,
    pub dv: Option<Vec<String>>,
    pub de: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
    pub compare_x_max: usize,
    pub two_path_tol_exp: usize,
    pub spectrum_tol_exp: usize,
    pub sensitivity_tol_exp: usize,
    pub out: Option<String>,
    pub csv: Option<String>,
}

impl RunConfig {
    /// Defaults, with the precision taken from `CASORATI_PRECISION_BITS` when set.
    pub fn new(subcommand: Subcommand) -> Result<Self> {
        let precision = match std::env::var(PRECISION_ENV) {
            Ok(v) => parse_num(PRECISION_ENV, &v)?,
            Err(_) => DEFAULT_PRECISION,
        };
        Ok(Self {
            subcommand,
            trials: 200,
            idqm_trials: 50,
            seed: 20_240_501,
            identities: None,
            fault: None,
            budget_bits: DEFAULT_BUDGET_BITS,
            gammas: vec!["1".into(), "1/2".into()],
            beta: "2".into(),
            c: "1/3".into(),
            precision,
            window: 80,
            truncation: 60,
            eigenvalues: 5,
            dv: None,
            de: None,
            n: None,
            compare_x_max: 40,
            two_path_tol_exp: 25,
            spectrum_tol_exp: 8,
            sensitivity_tol_exp: 9,
            out: None,
            csv: None,
        })
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "subcommand" => self.subcommand = Subcommand::parse(v)?,
            "trials" => self.trials = parse_num(key, v)?,
            "idqm_trials" => self.idqm_trials = parse_num(key, v)?,
            "seed" => self.seed = parse_num(key, v)?,
            "identities" => {
                let ids = split(v);
                if let Some(bad) = ids.iter().find(|s| IdentityId::parse(s).is_none()) {
                    return Err(Error::Config(format!("unknown identity {bad:?}")));
                }
                self.identities = Some(ids);
            }
            "fault" => self.fault = Some(parse_fault(v)?),
            "budget_bits" => self.budget_bits = parse_num(key, v)?,
            "gamma" | "gammas" => self.gammas = rationals(key, v)?,
            "beta" => self.beta = rational(key, v)?,
            "c" => self.c = rational(key, v)?,
            "precision" => self.precision = parse_num(key, v)?,
            "window" => self.window = parse_num(key, v)?,
            "truncation" => self.truncation = parse_num(key, v)?,
            "eigenvalues" => self.eigenvalues = parse_num(key, v)?,
            "dv" => self.dv = Some(rationals(key, v)?),
            "de" => self.de = Some(nums(key, v)?),
            "n" => self.n = Some(nums(key, v)?),
            "compare_x_max" => self.compare_x_max = parse_num(key, v)?,
            "two_path_tol_exp" => self.two_path_tol_exp = parse_num(key, v)?,
            "spectrum_tol_exp" => self.spectrum_tol_exp = parse_num(key, v)?,
            "sensitivity_tol_exp" => self.sensitivity_tol_exp = parse_num(key, v)?,
            "out" => self.out = Some(v.to_string()),
            "csv" => self.csv = Some(v.to_string()),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (k, v) in parse_flat(text)? {
            self.set(&k, &v)?;
        }
        Ok(())
    }

    /// The settings as flat key-value pairs, readable by [`RunConfig::apply_file`].
    pub fn to_flat(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("subcommand", self.subcommand.name().into());
        put("trials", self.trials.to_string());
        put("idqm_trials", self.idqm_trials.to_string());
        put("seed", self.seed.to_string());
        if let Some(ids) = &self.identities {
            put("identities", ids.join(","));
        }
        if let Some(f) = self.fault {
            put("fault", fault_name(f));
        }
        put("budget_bits", self.budget_bits.to_string());
        put("gamma", self.gammas.join(","));
        put("beta", self.beta.clone());
        put("c", self.c.clone());
        put("precision", self.precision.to_string());
        put("window", self.window.to_string());
        put("truncation", self.truncation.to_string());
        put("eigenvalues", self.eigenvalues.to_string());
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        if let Some(dv) = &self.dv {
            put("dv", dv.join(","));
        }
        if let Some(de) = &self.de {
            put("de", join(de));
        }
        if let Some(n) = &self.n {
            put("n", join(n));
        }
        put("compare_x_max", self.compare_x_max.to_string());
        put("two_path_tol_exp", self.two_path_tol_exp.to_string());
        put("spectrum_tol_exp", self.spectrum_tol_exp.to_string());
        put("sensitivity_tol_exp", self.sensitivity_tol_exp.to_string());
        m
    }
}

pub fn parse_flat(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: not a number: {v:?}")))
}

fn split(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn rational(key: &str, v: &str) -> Result<String> {
    parse_rational(v).map_err(|e| Error::Config(format!("{key}: {e}")))?;
    Ok(v.trim().to_string())
}

fn rationals(key: &str, v: &str) -> Result<Vec<String>> {
    split(v).iter().map(|s| rational(key, s)).collect()
}

fn nums(key: &str, v: &str) -> Result<Vec<usize>> {
    split(v).iter().map(|s| parse_num(key, s)).collect()
}

/// `casoratian-entry[:row:col]`, `epsilon-parity` or `eq3-shift`.
pub fn parse_fault(v: &str) -> Result<Fault> {
    let mut parts = v.trim().split(':');
    match parts.next().unwrap_or("") {
        "epsilon-parity" => Ok(Fault::EpsilonParity),
        "eq3-shift" => Ok(Fault::Eq3Shift),
        "casoratian-entry" => {
            let row = parts.next().map_or(Ok(0), |s| parse_num("fault", s))?;
            let col = parts.next().map_or(Ok(0), |s| parse_num("fault", s))?;
            Ok(Fault::CasoratianEntry { row, col })
        }
        other => Err(Error::Config(format!("unknown fault {other:?}"))),
    }
}

pub fn fault_name(f: Fault) -> String {
    match f {
        Fault::EpsilonParity => "epsilon-parity".into(),
        Fault::Eq3Shift => "eq3-shift".into(),
        Fault::CasoratianEntry { row, col } => format!("casoratian-entry:{row}:{col}"),
    }
}
