//! Functions sampled on an integer window `{0, …, x_max}`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::BigFloat;

/// Values on `{0, …, len-1}` with an optional energy tag.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFn<T> {
    values: Vec<T>,
    energy: Option<T>,
}

impl<T: Clone> GridFn<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values, energy: None }
    }

    pub fn with_energy(mut self, e: T) -> Self {
        self.energy = Some(e);
        self
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::new((0..len).map(f).collect())
    }

    pub fn energy(&self) -> Option<&T> {
        self.energy.as_ref()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest valid point, `None` for an empty window.
    pub fn x_max(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn at(&self, x: usize) -> Result<&T> {
        self.values.get(x).ok_or(Error::WindowUnderflow { required: x + 1, available: self.values.len() })
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self { values: self.values[..len.min(self.values.len())].to_vec(), energy: self.energy.clone() }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> GridFn<U> {
        GridFn { values: self.values.iter().map(&f).collect(), energy: self.energy.as_ref().map(&f) }
    }
}

impl GridFn<BigRational> {
    pub fn to_float(&self, precision: usize) -> GridFn<BigFloat> {
        self.map(|q| BigFloat::from_rational(q, precision))
    }

    pub fn is_zero_everywhere(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl GridFn<BigFloat> {
    /// True iff every value has the same strict sign.
    pub fn has_definite_sign(&self) -> bool {
        let Some(first) = self.values.first() else { return true };
        let s = first.signum();
        s != 0 && self.values.iter().all(|v| v.signum() == s)
    }

    pub fn max_abs(&self) -> Option<BigFloat> {
        self.values.iter().map(BigFloat::abs).reduce(BigFloat::max)
    }
}
