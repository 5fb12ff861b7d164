//! Line fitting: slope bounds, root selection and the end-to-end fit.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::objective::{check_gamma, intercept, sse};
use crate::quartic::{build_quartic, real_roots};
use crate::stats::{compute_stats, SufficientStats};

/// Correlations with magnitude below this are treated as zero.
pub const ZERO_CORRELATION: f64 = 1e-12;

/// What to do when the data is negatively correlated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativeCorrelationPolicy {
    /// Fit `(x, −y)` and negate the slope.
    Reflect,
    #[default]
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Weight of the vertical errors; `1 − gamma` weights the horizontal ones.
    pub gamma: f64,
    /// Quartic roots must satisfy `|q(r)| ≤ root_residual_tol · scale`.
    pub root_residual_tol: f64,
    /// Absolute slope tolerance for the golden-section cross-check.
    pub oracle_tol: f64,
    /// Relative widening of the slope bounds when filtering roots.
    pub bound_slack: f64,
    pub negative_correlation_policy: NegativeCorrelationPolicy,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            root_residual_tol: 1e-10,
            oracle_tol: 1e-9,
            bound_slack: 1e-8,
            negative_correlation_policy: NegativeCorrelationPolicy::Error,
        }
    }
}

impl FitConfig {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            ..Self::default()
        }
    }

    pub fn with_policy(mut self, policy: NegativeCorrelationPolicy) -> Self {
        self.negative_correlation_policy = policy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_gamma(self.gamma)?;
        let tolerances = [
            ("root_residual_tol", self.root_residual_tol),
            ("oracle_tol", self.oracle_tol),
            ("bound_slack", self.bound_slack),
        ];
        for (name, value) in tolerances {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// A fitted line `y = beta0 + beta1·x` together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedLine {
    pub beta0: f64,
    pub beta1: f64,
    pub gamma: f64,
    /// Objective value at `(beta0, beta1)`.
    pub sse: f64,
    /// Real roots of the slope quartic, in the slope coordinate of the
    /// returned line. Empty when a closed form was used (`gamma` 0 or 1).
    pub candidate_roots: Vec<f64>,
    /// `|q(beta1)|` for the quartic that produced the slope; zero for the
    /// closed forms.
    pub selected_root_residual: f64,
    /// Set when the fit was made on `(x, −y)` and the slope negated.
    pub reflected: bool,
    /// Relative distance by which the accepted root fell outside the slack
    /// interval before being clamped onto the bounds.
    pub bound_violation: Option<f64>,
}

impl FittedLine {
    pub fn predict(&self, x: f64) -> f64 {
        self.beta0 + self.beta1 * x
    }

    /// The x at which the line reaches `y`.
    pub fn inverse_predict(&self, y: f64) -> Result<f64> {
        if self.beta1 == 0.0 {
            return Err(Error::SingularSlope { slope: self.beta1 });
        }
        Ok((y - self.beta0) / self.beta1)
    }
}

/// Slope range `[ρ·√(S_yy/S_xx), √(S_yy/S_xx)/ρ]` spanned by the two
/// endpoint fits. Every interior weighting lands inside it.
pub fn slope_bounds(stats: &SufficientStats) -> Result<(f64, f64)> {
    if stats.rho.is_nan() || stats.rho <= 0.0 {
        return Err(Error::NonPositiveCorrelation { rho: stats.rho });
    }
    let ratio = stats.spread_ratio();
    Ok((stats.rho * ratio, ratio / stats.rho))
}

/// Outcome of [`select_slope`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeChoice {
    pub slope: f64,
    pub bound_violation: Option<f64>,
}

fn profile(stats: &SufficientStats, beta1: f64, gamma: f64) -> Result<f64> {
    sse(stats, intercept(stats, beta1), beta1, gamma)
}

/// Picks the slope among quartic roots.
///
/// Roots inside the slack-widened bounds are admissible; the one with the
/// smallest profile objective wins, ties going to the smaller slope. A
/// positive root within ten times the slack is clamped onto the bounds and
/// the overshoot reported. The winner must not be beaten by either bound.
pub fn select_slope(
    roots: &[f64],
    stats: &SufficientStats,
    gamma: f64,
    config: &FitConfig,
) -> Result<SlopeChoice> {
    let (lower, upper) = slope_bounds(stats)?;
    let slack = config.bound_slack;
    let no_root = |reason: &str| Error::NoAdmissibleRoot {
        reason: reason.to_string(),
        candidates: roots.to_vec(),
        lower,
        upper,
    };

    let inside = |r: f64, s: f64| r >= lower * (1.0 - s) && r <= upper * (1.0 + s);

    let mut sorted = roots.to_vec();
    sorted.sort_by(f64::total_cmp);

    let mut best: Option<(f64, f64)> = None;
    for &r in sorted.iter().filter(|&&r| inside(r, slack)) {
        let value = profile(stats, r, gamma)?;
        if best.is_none_or(|(_, v)| value < v) {
            best = Some((r, value));
        }
    }

    let (choice, value) = match best {
        Some((slope, value)) => (
            SlopeChoice {
                slope,
                bound_violation: None,
            },
            value,
        ),
        None => {
            let near = sorted
                .iter()
                .copied()
                .filter(|&r| r > 0.0 && inside(r, 10.0 * slack))
                .min_by(|a, b| overshoot(*a, lower, upper).total_cmp(&overshoot(*b, lower, upper)))
                .ok_or_else(|| no_root("no positive root inside the slope bounds"))?;
            let clamped = near.clamp(lower, upper);
            let choice = SlopeChoice {
                slope: clamped,
                bound_violation: Some(overshoot(near, lower, upper)),
            };
            (choice, profile(stats, clamped, gamma)?)
        }
    };

    // A stationary point is only accepted if it is the lowest point seen.
    let at_bounds = profile(stats, lower, gamma)?.min(profile(stats, upper, gamma)?);
    if value > at_bounds + 1e-12 * (1.0 + at_bounds.abs()) {
        return Err(no_root(
            "selected root has a larger objective than a slope bound",
        ));
    }
    Ok(choice)
}

fn overshoot(r: f64, lower: f64, upper: f64) -> f64 {
    if r < lower {
        (lower - r) / lower
    } else if r > upper {
        (r - upper) / upper
    } else {
        0.0
    }
}

/// Fits a dataset.
pub fn fit(data: &Dataset, config: &FitConfig) -> Result<FittedLine> {
    fit_stats(&compute_stats(data)?, config)
}

/// Fits from precomputed sufficient statistics.
pub fn fit_stats(stats: &SufficientStats, config: &FitConfig) -> Result<FittedLine> {
    config.validate()?;
    if stats.rho.is_nan() || stats.rho.abs() < ZERO_CORRELATION {
        return Err(Error::ZeroCorrelation { rho: stats.rho });
    }
    if stats.rho > 0.0 {
        return fit_positive(stats, config);
    }
    match config.negative_correlation_policy {
        NegativeCorrelationPolicy::Error => Err(Error::NonPositiveCorrelation { rho: stats.rho }),
        NegativeCorrelationPolicy::Reflect => {
            let mirrored = fit_positive(&stats.reflect_y(), config)?;
            let beta1 = -mirrored.beta1;
            let beta0 = intercept(stats, beta1);
            Ok(FittedLine {
                beta0,
                beta1,
                sse: sse(stats, beta0, beta1, config.gamma)?,
                candidate_roots: mirrored.candidate_roots.iter().rev().map(|r| -r).collect(),
                reflected: true,
                ..mirrored
            })
        }
    }
}

fn fit_positive(stats: &SufficientStats, config: &FitConfig) -> Result<FittedLine> {
    let gamma = config.gamma;
    let (beta1, candidate_roots, residual, bound_violation) = if gamma == 1.0 {
        (stats.s_xy / stats.s_xx, Vec::new(), 0.0, None)
    } else if gamma == 0.0 {
        (stats.s_yy / stats.s_xy, Vec::new(), 0.0, None)
    } else {
        let quartic = build_quartic(stats, gamma)?;
        let roots = real_roots(&quartic, config.root_residual_tol)?;
        let choice = select_slope(&roots, stats, gamma, config)?;
        let residual = quartic.eval(choice.slope).abs();
        (choice.slope, roots, residual, choice.bound_violation)
    };
    let beta0 = intercept(stats, beta1);
    Ok(FittedLine {
        beta0,
        beta1,
        gamma,
        sse: sse(stats, beta0, beta1, gamma)?,
        candidate_roots,
        selected_root_residual: residual,
        reflected: false,
        bound_violation,
    })
}
