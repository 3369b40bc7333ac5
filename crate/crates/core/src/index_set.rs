//! Ordered seed labels `D = D_v ∪ D_e`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Virtual labels `dv` and deleted eigenstate labels `de`, each with its seed energy.
/// Seeds are ordered with `dv` first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexSet<E> {
    pub dv: Vec<usize>,
    pub de: Vec<usize>,
    pub ev: Vec<E>,
    pub ee: Vec<E>,
}

fn distinct(labels: &[usize], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    if labels.iter().all(|l| seen.insert(*l)) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} labels must be distinct")))
    }
}

impl<E: Clone> IndexSet<E> {
    pub fn new(dv: Vec<usize>, de: Vec<usize>, ev: Vec<E>, ee: Vec<E>) -> Result<Self> {
        distinct(&dv, "virtual")?;
        distinct(&de, "eigenstate")?;
        if ev.len() != dv.len() || ee.len() != de.len() {
            return Err(Error::InvalidParameter("one energy per label is required".into()));
        }
        Ok(Self { dv, de, ev, ee })
    }

    pub fn mv(&self) -> usize {
        self.dv.len()
    }

    pub fn me(&self) -> usize {
        self.de.len()
    }

    pub fn m(&self) -> usize {
        self.mv() + self.me()
    }

    /// Smallest `n ≥ 0` not in `de`.
    pub fn mu(&self) -> usize {
        (0..).find(|n| !self.de.contains(n)).expect("finite set")
    }

    pub fn is_deleted(&self, n: usize) -> bool {
        self.de.contains(&n)
    }

    /// Seed energies in seed order.
    pub fn seed_energies(&self) -> Vec<E> {
        self.ev.iter().chain(&self.ee).cloned().collect()
    }
}
