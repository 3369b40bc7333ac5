//! Exact Wronskian and Casoratian determinants, their identities, and multi-step
//! Darboux transformations for ordinary and discrete quantum mechanics.

pub mod error;
pub mod cli;
pub mod det;
pub mod exact;
pub mod grid;
pub mod identities;
pub mod idqm;
pub mod index_set;
pub mod oqm;
pub mod rdqm;
pub mod report;

pub use error::{Error, Result};
