use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::det::{casoratian_imag_matrix, casoratian_real_matrix, det, scale_by, wronskian_exp_parts};
use crate::error::{Error, Result};
use crate::exact::{ExpPoly, Gq, Poly, Ring};

/// Deliberate corruption used by negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Fault {
    /// Adds one to matrix entry `(row, col)` (taken modulo the size) of the checked determinant.
    CasoratianEntry { row: usize, col: usize },
    /// Negates the sign factor `ε`.
    EpsilonParity,
    /// Evaluates the `x+1` factor of the real-shift m=2 identity at `x`.
    Eq3Shift,
}

pub const DEFAULT_BUDGET_BITS: u64 = 1_000_000;

/// Per-check evaluation context: optional fault and the coefficient bit budget.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub fault: Option<Fault>,
    pub budget_bits: u64,
}

impl Default for Ctx {
    fn default() -> Self {
        Self { fault: None, budget_bits: DEFAULT_BUDGET_BITS }
    }
}

impl Ctx {
    pub fn new(fault: Option<Fault>, budget_bits: u64) -> Self {
        Self { fault, budget_bits }
    }

    pub fn guard<T: Ring>(&self, v: &T) -> Result<()> {
        let bits = v.bit_size();
        if bits > self.budget_bits {
            return Err(Error::BudgetExceeded { bits, limit: self.budget_bits });
        }
        Ok(())
    }

    pub fn epsilon_flipped(&self) -> bool {
        self.fault == Some(Fault::EpsilonParity)
    }

    pub fn eq3_shifted(&self) -> bool {
        self.fault == Some(Fault::Eq3Shift)
    }

    fn tamper<T: Ring>(&self, m: &mut [Vec<T>], target: bool) {
        if !target {
            return;
        }
        if let Some(Fault::CasoratianEntry { row, col }) = self.fault {
            let n = m.len();
            if n > 0 {
                let e = &mut m[row % n][col % n];
                *e = e.add_ref(&T::one());
            }
        }
    }

    /// Wronskian of exp-class functions; `target` marks the determinant a fault may hit.
    pub fn wronskian(&self, fs: &[ExpPoly], target: bool) -> Result<ExpPoly> {
        let (mut m, a, b) = wronskian_exp_parts(fs);
        self.tamper(&mut m, target);
        let d = det(m);
        self.guard(&d)?;
        Ok(ExpPoly::new(d, a, b))
    }

    pub fn cas_imag(&self, fs: &[Poly], gamma: &BigRational, target: bool) -> Result<Poly> {
        let mut m = casoratian_imag_matrix(fs, gamma)?;
        self.tamper(&mut m, target);
        let n = fs.len() as i64;
        let d = scale_by(&det(m), &Gq::i_pow(n * (n - 1) / 2));
        self.guard(&d)?;
        Ok(d)
    }

    pub fn cas_real(&self, fs: &[Poly], target: bool) -> Result<Poly> {
        let mut m = casoratian_real_matrix(fs);
        self.tamper(&mut m, target);
        let d = det(m);
        self.guard(&d)?;
        Ok(d)
    }
}

/// `∏ p(x + δ)` over the given shifts.
pub fn shifted_product(p: &Poly, shifts: impl IntoIterator<Item = Gq>) -> Poly {
    shifts.into_iter().fold(Poly::one(), |acc, d| &acc * &p.shift(&d))
}
