//! Paired observations.

use crate::error::{Error, Result};

/// An ordered collection of `(x, y)` observations.
///
/// Construction guarantees at least two points and finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<(f64, f64)>,
}

impl Dataset {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 observations, got {}",
                points.len()
            )));
        }
        if let Some(i) = points
            .iter()
            .position(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            let (x, y) = points[i];
            return Err(Error::InvalidInput(format!(
                "observation {} is not finite: ({x}, {y})",
                i + 1
            )));
        }
        Ok(Self { points })
    }

    /// Builds a dataset from separate x and y columns of equal length.
    pub fn from_columns(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidInput(format!(
                "column lengths differ: {} x values, {} y values",
                xs.len(),
                ys.len()
            )));
        }
        Self::new(xs.iter().copied().zip(ys.iter().copied()).collect())
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; a valid dataset holds at least two points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Applies `f` to every point, re-validating the result.
    pub fn map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> (f64, f64),
    {
        Self::new(self.points.iter().map(|&(x, y)| f(x, y)).collect())
    }
}
