//! Centered sufficient statistics.
//!
//! Every quantity the fit needs (objective, gradient, quartic, bounds) is a
//! function of `n`, the two means and the three centered sums below, so the
//! raw data is touched exactly once.

use crate::data::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientStats {
    pub n: usize,
    pub x_bar: f64,
    pub y_bar: f64,
    /// Σ(xᵢ − x̄)²
    pub s_xx: f64,
    /// Σ(yᵢ − ȳ)²
    pub s_yy: f64,
    /// Σ(xᵢ − x̄)(yᵢ − ȳ)
    pub s_xy: f64,
    /// s_xy / √(s_xx·s_yy), clamped to [−1, 1].
    pub rho: f64,
}

/// Two-pass centered computation of the sufficient statistics.
///
/// Fails with [`Error::DegenerateData`] when every x (or every y) is equal.
pub fn compute_stats(data: &Dataset) -> Result<SufficientStats> {
    let n = data.len();
    let nf = n as f64;
    let x_bar = data.xs().sum::<f64>() / nf;
    let y_bar = data.ys().sum::<f64>() / nf;

    let (mut s_xx, mut s_yy, mut s_xy) = (0.0, 0.0, 0.0);
    for &(x, y) in data.points() {
        let dx = x - x_bar;
        let dy = y - y_bar;
        s_xx += dx * dx;
        s_yy += dy * dy;
        s_xy += dx * dy;
    }
    SufficientStats::from_moments(n, x_bar, y_bar, s_xx, s_yy, s_xy)
}

impl SufficientStats {
    /// Assembles statistics from precomputed moments and derives the
    /// correlation.
    pub fn from_moments(
        n: usize,
        x_bar: f64,
        y_bar: f64,
        s_xx: f64,
        s_yy: f64,
        s_xy: f64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least 2 observations, got {n}"
            )));
        }
        let all_finite = [x_bar, y_bar, s_xx, s_yy, s_xy]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite || s_xx < 0.0 || s_yy < 0.0 {
            return Err(Error::InvalidInput(
                "moments must be finite with non-negative sums of squares".into(),
            ));
        }
        if s_xx == 0.0 {
            return Err(Error::DegenerateData(
                "all x values are equal (S_xx = 0)".into(),
            ));
        }
        if s_yy == 0.0 {
            return Err(Error::DegenerateData(
                "all y values are equal (S_yy = 0)".into(),
            ));
        }
        let rho = (s_xy / (s_xx * s_yy).sqrt()).clamp(-1.0, 1.0);
        Ok(Self {
            n,
            x_bar,
            y_bar,
            s_xx,
            s_yy,
            s_xy,
            rho,
        })
    }

    /// √(S_yy / S_xx), the slope unit shared by both endpoint fits.
    pub fn spread_ratio(&self) -> f64 {
        (self.s_yy / self.s_xx).sqrt()
    }

    /// Statistics of the dataset with every y negated.
    pub fn reflect_y(&self) -> Self {
        Self {
            y_bar: -self.y_bar,
            s_xy: -self.s_xy,
            rho: -self.rho,
            ..*self
        }
    }
}
