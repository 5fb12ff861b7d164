//! Derivative-free cross-checks of the quartic route.
//!
//! Nothing here touches the quartic. The slope is recovered by golden-section
//! search on the profile objective, and the analytic gradient is compared
//! against central differences of the objective.

use crate::error::{Error, Result};
use crate::fit::{fit_stats, slope_bounds, FitConfig};
use crate::objective::{check_gamma, intercept, sse, sse_gradient};
use crate::stats::SufficientStats;

/// Default relative agreement between the two slope routes.
pub const SLOPE_AGREEMENT: f64 = 1e-6;
/// Default bound on [`check_gradient`].
pub const GRADIENT_AGREEMENT: f64 = 1e-6;
/// Most profile evaluations one minimization may spend.
pub const MAX_PROFILE_EVALS: usize = 200;

/// Relative widening of the slope bounds used as the search bracket.
const BRACKET_WIDENING: f64 = 0.01;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Objective as a function of the slope alone, with the intercept set to its
/// optimum for that slope.
pub fn profile_sse(stats: &SufficientStats, beta1: f64, gamma: f64) -> Result<f64> {
    sse(stats, intercept(stats, beta1), beta1, gamma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileMinimum {
    pub slope: f64,
    pub value: f64,
    pub evals: usize,
    pub bracket: (f64, f64),
}

/// Golden-section minimization of [`profile_sse`] over the slope bounds
/// widened by 1% on each side.
///
/// Stops when the bracket is narrower than `tol` or the evaluation budget
/// runs out. Fails with [`Error::BracketFailure`] if either bracket end
/// scores lower than the interior minimum found.
pub fn minimize_profile(stats: &SufficientStats, gamma: f64, tol: f64) -> Result<ProfileMinimum> {
    check_gamma(gamma)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (lower, upper) = slope_bounds(stats)?;
    let bracket = (
        lower * (1.0 - BRACKET_WIDENING),
        upper * (1.0 + BRACKET_WIDENING),
    );
    let f = |b: f64| profile_sse(stats, b, gamma);

    let (mut a, mut b) = bracket;
    let f_a = f(a)?;
    let f_b = f(b)?;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 4;

    while b - a > tol && evals < MAX_PROFILE_EVALS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }

    let (slope, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if f_a < value || f_b < value {
        return Err(Error::BracketFailure(format!(
            "bracket [{}, {}] does not enclose a minimum: end values {f_a}, {f_b} vs interior {value}",
            bracket.0, bracket.1
        )));
    }
    Ok(ProfileMinimum {
        slope,
        value,
        evals,
        bracket,
    })
}

/// Largest relative disagreement between [`sse_gradient`] and central
/// differences of [`sse`].
///
/// Each coordinate is stepped by `step · (1 + |β|)`. The error of a component
/// is `|analytic − numeric| / max(|analytic|, |numeric|, 1 + SSE)`; the
/// objective term in the denominator keeps components that are legitimately
/// zero (at an optimum) from dividing rounding noise by zero.
pub fn check_gradient(
    stats: &SufficientStats,
    beta0: f64,
    beta1: f64,
    gamma: f64,
    step: f64,
) -> Result<f64> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {step}"
        )));
    }
    let h0 = step * (1.0 + beta0.abs());
    let h1 = step * (1.0 + beta1.abs());
    if beta1.abs() <= h1 {
        return Err(Error::SingularSlope { slope: beta1 });
    }
    let (g0, g1) = sse_gradient(stats, beta0, beta1, gamma)?;
    let f = |b0: f64, b1: f64| sse(stats, b0, b1, gamma);
    let n0 = (f(beta0 + h0, beta1)? - f(beta0 - h0, beta1)?) / (2.0 * h0);
    let n1 = (f(beta0, beta1 + h1)? - f(beta0, beta1 - h1)?) / (2.0 * h1);
    let floor = 1.0 + f(beta0, beta1)?.abs();
    let rel = |a: f64, n: f64| (a - n).abs() / a.abs().max(n.abs()).max(floor);
    Ok(rel(g0, n0).max(rel(g1, n1)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub oracle_slope: f64,
    pub quartic_slope: f64,
    pub abs_gap: f64,
    pub profile_evals: usize,
    pub bracket: (f64, f64),
    pub gradient_max_rel_err: f64,
}

impl OracleReport {
    /// True when the slopes agree to `slope_rel_tol · (1 + |slope|)` and the
    /// gradient check stayed within `gradient_tol`.
    pub fn passes(&self, slope_rel_tol: f64, gradient_tol: f64) -> bool {
        self.abs_gap <= slope_rel_tol * (1.0 + self.quartic_slope.abs())
            && self.gradient_max_rel_err <= gradient_tol
    }
}

/// Fits with `config`, then re-derives the slope with [`minimize_profile`]
/// and checks the gradient at the fit and at two points off it.
///
/// Negatively correlated data (with the reflect policy) is checked in its
/// mirrored form; the reported slopes keep the sign of the fit.
pub fn verify(stats: &SufficientStats, config: &FitConfig) -> Result<OracleReport> {
    let line = fit_stats(stats, config)?;
    let (search_stats, sign) = if line.reflected {
        (stats.reflect_y(), -1.0)
    } else {
        (*stats, 1.0)
    };
    let min = minimize_profile(&search_stats, config.gamma, config.oracle_tol)?;
    let oracle_slope = sign * min.slope;
    let bracket = if sign > 0.0 {
        min.bracket
    } else {
        (-min.bracket.1, -min.bracket.0)
    };

    let shift = 0.1 * (1.0 + line.beta0.abs());
    let probes = [
        (line.beta0, line.beta1),
        (line.beta0 + shift, line.beta1 * 1.05),
        (line.beta0 - shift, line.beta1 * 0.95),
    ];
    let mut gradient_max_rel_err: f64 = 0.0;
    for (b0, b1) in probes {
        let err = check_gradient(stats, b0, b1, config.gamma, 1e-6)?;
        gradient_max_rel_err = gradient_max_rel_err.max(err);
    }

    Ok(OracleReport {
        oracle_slope,
        quartic_slope: line.beta1,
        abs_gap: (oracle_slope - line.beta1).abs(),
        profile_evals: min.evals,
        bracket,
        gradient_max_rel_err,
    })
}
