//! The universal sample container: values observed at strictly increasing
//! time stamps, measured in days.

use crate::error::{Error, Result};
use serde::Serialize;

/// A univariate series on a strictly increasing time grid (days).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Data(format!(
                "times ({}) and values ({}) differ in length",
                times.len(),
                values.len()
            )));
        }
        if times.is_empty() {
            return Err(Error::Data("empty series".into()));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::Data("non-finite time stamp".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("non-finite value".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Data("times must be strictly increasing".into()));
        }
        Ok(Self { times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Total time spanned by the series, in days.
    pub fn span_days(&self) -> f64 {
        self.times[self.times.len() - 1] - self.times[0]
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.times, self.values)
    }
}
