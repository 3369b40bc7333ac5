use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{ExpPoly, Poly};

use super::{FnSpec, IdentityId, Instance, DEFAULT_BUDGET_BITS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n_range: (usize, usize),
    pub m_range: (usize, usize),
    pub max_degree: usize,
    pub coefficient_bound: i64,
    pub trials: u64,
    pub master_seed: u64,
    /// Shifts drawn for the imaginary-shift family.
    pub gammas: Vec<String>,
    pub budget_bits: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            n_range: (0, 3),
            m_range: (1, 3),
            max_degree: 5,
            coefficient_bound: 9,
            trials: 200,
            master_seed: 20_240_501,
            gammas: vec!["1".into(), "1/2".into(), "2".into()],
            budget_bits: DEFAULT_BUDGET_BITS,
        }
    }
}

/// Stream for one `(identity, trial)` pair.
pub fn trial_rng(master_seed: u64, id: IdentityId, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed ^ id.offset().wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(trial);
    rng
}

struct Draw<'a> {
    rng: &'a mut ChaCha8Rng,
    cfg: &'a SamplerConfig,
}

impl Draw<'_> {
    fn rational(&mut self, nonzero: bool) -> BigRational {
        let b = self.cfg.coefficient_bound.max(1);
        loop {
            let n = self.rng.gen_range(-b..=b);
            if nonzero && n == 0 {
                continue;
            }
            let d = self.rng.gen_range(1..=b);
            return BigRational::new(BigInt::from(n), BigInt::from(d));
        }
    }

    fn poly(&mut self, degree: usize) -> Poly {
        let mut c: Vec<BigRational> = (0..degree).map(|_| self.rational(false)).collect();
        c.push(self.rational(true));
        Poly::from_rationals(c)
    }

    fn any_poly(&mut self) -> Poly {
        let d = self.rng.gen_range(0..=self.cfg.max_degree);
        self.poly(d)
    }

    /// `k` polynomials with pairwise distinct degrees, which keeps them linearly independent.
    fn distinct(&mut self, k: usize) -> Vec<Poly> {
        let mut degrees: Vec<usize> = (0..=self.cfg.max_degree).collect();
        degrees.shuffle(self.rng);
        degrees.truncate(k);
        degrees.into_iter().map(|d| self.poly(d)).collect()
    }

    fn exp_pair(&mut self) -> (BigRational, BigRational) {
        if self.rng.gen_bool(0.5) {
            return (BigRational::from_integer(0.into()), BigRational::from_integer(0.into()));
        }
        let a = BigRational::new(self.rng.gen_range(-2..=2i64).into(), 2.into());
        let b = BigRational::new(self.rng.gen_range(-1..=1i64).into(), 1.into());
        (a, b)
    }

    fn exps(&mut self, polys: Vec<Poly>) -> Vec<FnSpec> {
        polys
            .into_iter()
            .map(|p| {
                let (a, b) = self.exp_pair();
                FnSpec::from_exp(&ExpPoly::new(p, a, b))
            })
            .collect()
    }

    fn range(&mut self, r: (usize, usize)) -> usize {
        self.rng.gen_range(r.0..=r.1.max(r.0))
    }

    /// `(n, m)` with `n + m + extra` functions fitting the distinct-degree pool.
    fn sizes(&mut self, extra: usize) -> (usize, usize) {
        let pool = self.cfg.max_degree + 1;
        let mut n = self.range(self.cfg.n_range);
        let mut m = self.range(self.cfg.m_range).max(1);
        while n + m + extra > pool && m > 1 {
            m -= 1;
        }
        while n + m + extra > pool && n > 0 {
            n -= 1;
        }
        (n, m)
    }

    fn gamma(&mut self) -> String {
        self.cfg.gammas.choose(self.rng).cloned().unwrap_or_else(|| "1".into())
    }
}

/// Draws the inputs of one trial.
pub fn sample_instance(id: IdentityId, cfg: &SamplerConfig, trial: u64) -> Instance {
    use IdentityId::*;
    let mut rng = trial_rng(cfg.master_seed, id, trial);
    let mut d = Draw { rng: &mut rng, cfg };
    let mut inst = Instance::default();
    let wronskian = matches!(
        id,
        WronskianQuotient | WronskianOneReduction | WronskianGauge | WronskianNesting | WronskianTheorem
            | WronskianCorollary | Eq1 | WroId
    );
    let imag = matches!(
        id,
        CasImagQuotient | CasImagOneReduction | CasImagGauge | CasImagNesting | CasImagTheorem | CasImagCorollary | Eq2
    );
    let wrap = |d: &mut Draw, ps: Vec<Poly>| if wronskian { d.exps(ps) } else { Instance::polys(&ps) };
    match id {
        WronskianQuotient | CasImagQuotient | CasRealQuotient => {
            let f = d.any_poly();
            let g = d.any_poly();
            let mut pair = wrap(&mut d, vec![f, g]);
            inst.g = pair.pop();
            inst.fs = pair;
        }
        WronskianOneReduction | CasImagOneReduction | CasRealOneReduction => {
            let n = d.range(cfg.n_range).min(cfg.max_degree);
            let mut ps = d.distinct(n + 1);
            ps.retain(|p| p.degree() != Some(0));
            ps.truncate(n);
            inst.fs = wrap(&mut d, ps);
        }
        WronskianGauge | WronskianNesting | CasImagGauge | CasImagNesting | CasRealGauge | CasRealNesting => {
            let n = d.range(cfg.n_range).min(cfg.max_degree + 1);
            let ps = d.distinct(n);
            let g = d.any_poly();
            let mut all = wrap(&mut d, ps);
            all.extend(wrap(&mut d, vec![g]));
            inst.g = all.pop();
            inst.fs = all;
        }
        WronskianTheorem | WronskianCorollary | CasImagTheorem | CasImagCorollary | CasRealTheorem
        | CasRealCorollary => {
            let (n, m) = d.sizes(0);
            let ps = d.distinct(n + m);
            let mut all = wrap(&mut d, ps);
            inst.us = all.split_off(n);
            inst.fs = all;
        }
        Eq1 | Eq2 | Eq3 => {
            let (n, _) = d.sizes(1);
            let ps = d.distinct(n + 2);
            let mut all = wrap(&mut d, ps);
            inst.us = all.split_off(n);
            inst.fs = all;
        }
        WroId | CasRealSignedRatio => {
            let (n, m) = d.sizes(1);
            let ps = d.distinct(n + m + 1);
            let mut all = wrap(&mut d, ps);
            inst.v = all.pop();
            inst.us = all.split_off(n);
            inst.fs = all;
        }
        SumFormula => inst.j_max = Some(10),
        ClassicalLimit => {
            let mut degrees = vec![0usize, 1, 2, 3];
            degrees.shuffle(d.rng);
            let ps: Vec<Poly> = degrees[..3].iter().map(|&k| d.poly(k)).collect();
            inst.fs = Instance::polys(&ps);
            inst.gamma = Some("1".into());
            inst.halvings = Some(4);
        }
    }
    if imag {
        inst.gamma = Some(d.gamma());
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let cfg = SamplerConfig::default();
        for id in IdentityId::ALL {
            assert_eq!(sample_instance(id, &cfg, 7), sample_instance(id, &cfg, 7));
        }
        assert_ne!(
            sample_instance(IdentityId::CasRealTheorem, &cfg, 1),
            sample_instance(IdentityId::CasRealTheorem, &cfg, 2)
        );
    }

    #[test]
    fn sizes_respect_the_pool() {
        let cfg = SamplerConfig::default();
        for t in 0..50 {
            let inst = sample_instance(IdentityId::WroId, &cfg, t);
            assert!(inst.fs.len() + inst.us.len() + 1 <= cfg.max_degree + 1);
            assert!(!inst.us.is_empty());
            let inst = sample_instance(IdentityId::CasImagTheorem, &cfg, t);
            assert!(inst.fs.len() <= 3 && (1..=3).contains(&inst.us.len()));
            assert!(inst.gamma.is_some());
        }
    }
}
