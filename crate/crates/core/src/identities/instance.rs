use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{ExpPoly, Poly};

/// Serializable exp-class function: ascending coefficients plus the exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnSpec {
    pub coeffs: String,
    #[serde(default = "zero_str", skip_serializing_if = "is_zero_str")]
    pub a: String,
    #[serde(default = "zero_str", skip_serializing_if = "is_zero_str")]
    pub b: String,
}

fn zero_str() -> String {
    "0".into()
}

fn is_zero_str(s: &String) -> bool {
    s == "0"
}

impl FnSpec {
    pub fn from_poly(p: &Poly) -> Self {
        Self { coeffs: p.coeff_string(), a: zero_str(), b: zero_str() }
    }

    pub fn from_exp(f: &ExpPoly) -> Self {
        Self { coeffs: f.base().coeff_string(), a: format_rational(f.a()), b: format_rational(f.b()) }
    }

    pub fn poly(&self) -> Result<Poly> {
        Poly::parse_coeffs(&self.coeffs)
    }

    pub fn exp(&self) -> Result<ExpPoly> {
        Ok(ExpPoly::new(self.poly()?, parse_rational(&self.a)?, parse_rational(&self.b)?))
    }
}

/// Inputs of one identity check; which fields matter depends on the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fs: Vec<FnSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub us: Vec<FnSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FnSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<FnSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halvings: Option<u32>,
}

impl Instance {
    pub fn polys(list: &[Poly]) -> Vec<FnSpec> {
        list.iter().map(FnSpec::from_poly).collect()
    }

    pub fn exps(list: &[ExpPoly]) -> Vec<FnSpec> {
        list.iter().map(FnSpec::from_exp).collect()
    }

    pub fn fs_poly(&self) -> Result<Vec<Poly>> {
        self.fs.iter().map(FnSpec::poly).collect()
    }

    pub fn us_poly(&self) -> Result<Vec<Poly>> {
        self.us.iter().map(FnSpec::poly).collect()
    }

    pub fn fs_exp(&self) -> Result<Vec<ExpPoly>> {
        self.fs.iter().map(FnSpec::exp).collect()
    }

    pub fn us_exp(&self) -> Result<Vec<ExpPoly>> {
        self.us.iter().map(FnSpec::exp).collect()
    }

    pub fn g_spec(&self) -> Result<&FnSpec> {
        self.g.as_ref().ok_or_else(|| Error::Config("instance lacks g".into()))
    }

    pub fn v_spec(&self) -> Result<&FnSpec> {
        self.v.as_ref().ok_or_else(|| Error::Config("instance lacks v".into()))
    }

    pub fn gamma(&self) -> Result<BigRational> {
        parse_rational(self.gamma.as_deref().ok_or_else(|| Error::Config("instance lacks gamma".into()))?)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.fs
            .iter()
            .chain(&self.us)
            .chain(&self.g)
            .chain(&self.v)
            .map(|s| s.poly().ok().and_then(|p| p.degree()).map_or(-1, |d| d as i64))
            .collect()
    }
}
