//! Numerical checks of the identities and asymptotic statements about the
//! zeros of R(s). Every check returns a [`Report`].

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::quad::{Quadrature, QuadratureEstimate};
use crate::rzeta::{log_abs_bigf, rzeta};
use crate::special::log_gamma;
use crate::zeros::ZeroRecord;

mod littlewood;
mod means;
mod theorems;

pub use littlewood::{backlund_bound_check, littlewood_closure, LittlewoodSides, LITTLEWOOD_TOL};
pub use means::{
    gamma_asymptotic_check, gamma_half_mean_closed, gamma_mean_check, littlemean_check,
    littlemean_closed, littlemean_exact, log_f_decomposition_check, mean_j_check,
    per_integral_check, per_integral_lhs, GammaMeanSample, GAMMA_MEAN_BOUND,
};
pub use theorems::{
    critical_line_check, jensen_meansquare_check, left_asymptotic_check, omega_count_check,
    thm1_check, thm2_check, thm2_count_difference, thm3_check, MEAN_SQUARE_TOL, OMEGA_STEP,
};

/// Lower limit used by the theorem checks; above 32π so that |R(4+it) − 1| < 1/2.
pub const DEFAULT_T0: f64 = 101.0;

/// Lower limit used by the mean-value checks. Their closed forms drop terms
/// of size t₀², which would swamp the residuals if t₀ were 101.
pub const MEAN_T0: f64 = 2.0;

/// Outcome of a check, serialised as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check_name: String,
    pub inputs: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub normalizer: f64,
    pub fitted_constants: BTreeMap<String, f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Report {
    pub fn new(check_name: &str, inputs: Value) -> Self {
        Report {
            check_name: check_name.to_string(),
            inputs,
            lhs: 0.0,
            rhs: 0.0,
            residual: 0.0,
            normalizer: 1.0,
            fitted_constants: BTreeMap::new(),
            pass: false,
            details: Value::Null,
        }
    }

    pub fn constant(mut self, name: &str, value: f64) -> Self {
        self.fitted_constants.insert(name.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }
}

/// Function whose log-modulus is integrated along a vertical line.
#[derive(Clone, Copy)]
pub enum LineFunction<'a> {
    R,
    F,
    /// Γ((σ + it)/2).
    GammaHalf,
    Custom(&'a (dyn Fn(Complex64) -> Result<Complex64> + Sync)),
}

impl LineFunction<'_> {
    pub fn log_abs(&self, s: Complex64) -> Result<f64> {
        match self {
            LineFunction::R => Ok(rzeta(s)?.norm().ln()),
            LineFunction::F => log_abs_bigf(s),
            LineFunction::GammaHalf => Ok(log_gamma(s * 0.5)?.re),
            LineFunction::Custom(f) => Ok(f(s)?.norm().ln()),
        }
    }
}

/// Ordinates of catalog zeros close enough to the line σ = `sigma` to make
/// log|f| nearly singular there.
pub fn singular_ordinates(zeros: &[ZeroRecord], sigma: f64, t0: f64, t: f64) -> Vec<f64> {
    zeros
        .iter()
        .filter(|z| (z.beta - sigma).abs() < 0.05 && z.gamma > t0 && z.gamma < t)
        .map(|z| z.gamma)
        .collect()
}

/// Distance below which a catalog zero counts as lying on the line.
pub const ON_LINE: f64 = 1e-9;
/// Shift applied to a line that passes through a zero.
pub const LINE_SHIFT: f64 = 1e-6;

/// Piece length for the parallel evaluation of long line integrals.
const PIECE: f64 = 10.0;

/// ∫_{t0}^{T} log|f(σ + it)| dt.
///
/// `zeros` (typically from a catalog) mark logarithmic singularities; a zero
/// lying on the line moves the line to σ + 1e−6, and `shifted` in the result
/// reports that.
pub fn log_modulus_line_integral(
    which: LineFunction<'_>,
    sigma: f64,
    t0: f64,
    t: f64,
    zeros: &[ZeroRecord],
    abs_tol: Option<f64>,
) -> Result<LineIntegral> {
    if !(t0 >= 1.0) {
        return Err(Error::InvalidInput(format!("t0 = {t0} < 1")));
    }
    if t < t0 {
        return Err(Error::InvalidInput(format!("T = {t} < t0 = {t0}")));
    }
    let on_line = zeros
        .iter()
        .any(|z| (z.beta - sigma).abs() < ON_LINE && z.gamma >= t0 && z.gamma <= t);
    let sigma_used = if on_line { sigma + LINE_SHIFT } else { sigma };
    let singular = singular_ordinates(zeros, sigma_used, t0, t);
    let tol = abs_tol.unwrap_or(1e-6 * (t - t0).max(1.0));
    let est = integrate_vertical(|s| which.log_abs(s), sigma_used, t0, t, &singular, tol)?;
    Ok(LineIntegral {
        estimate: est,
        sigma_used,
        shifted: on_line,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineIntegral {
    pub estimate: QuadratureEstimate<f64>,
    pub sigma_used: f64,
    pub shifted: bool,
}

impl LineIntegral {
    pub fn value(&self) -> f64 {
        self.estimate.value
    }
}

/// ∫_{t0}^{T} g(σ + it) dt for a real integrand, split into pieces that are
/// integrated in parallel and summed in order.
pub fn integrate_vertical<G>(
    g: G,
    sigma: f64,
    t0: f64,
    t: f64,
    singular: &[f64],
    abs_tol: f64,
) -> Result<QuadratureEstimate<f64>>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    if t == t0 {
        return Ok(QuadratureEstimate {
            value: 0.0,
            abs_error_estimate: 0.0,
            nodes_used: 0,
            singular_points_excluded: Vec::new(),
            converged: true,
        });
    }
    let n = ((t - t0) / PIECE).ceil().max(1.0) as usize;
    let h = (t - t0) / n as f64;
    let pieces: Vec<Result<QuadratureEstimate<f64>>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = t0 + h * k as f64;
            let b = if k + 1 == n {
                t
            } else {
                t0 + h * (k + 1) as f64
            };
            let q = Quadrature {
                abs_tol: abs_tol / n as f64,
                rel_tol: 0.0,
                max_panels: 20_000,
            };
            let local: Vec<f64> = singular
                .iter()
                .copied()
                .filter(|y| *y > a && *y < b)
                .collect();
            q.integrate_singular(|y| g(Complex64::new(sigma, y)), a, b, &local)
        })
        .collect();
    let mut total = QuadratureEstimate {
        value: 0.0,
        abs_error_estimate: 0.0,
        nodes_used: 0,
        singular_points_excluded: Vec::new(),
        converged: true,
    };
    for p in pieces {
        let p = p?;
        total.value += p.value;
        total.abs_error_estimate += p.abs_error_estimate;
        total.nodes_used += p.nodes_used;
        total
            .singular_points_excluded
            .extend(p.singular_points_excluded);
        total.converged &= p.converged;
    }
    Ok(total)
}

/// Running integrals ∫_{t0}^{T_k} for an increasing grid of upper limits.
pub fn cumulative_line_integrals(
    which: LineFunction<'_>,
    sigma: f64,
    t0: f64,
    t_grid: &[f64],
    zeros: &[ZeroRecord],
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(t_grid.len());
    let mut lo = t0;
    let mut acc = 0.0;
    for &t in t_grid {
        if t < lo {
            return Err(Error::InvalidInput("T grid must increase from t0".into()));
        }
        let piece = log_modulus_line_integral(which, sigma, lo.max(1.0), t, zeros, None)?;
        acc += piece.value();
        out.push(acc);
        lo = t;
    }
    Ok(out)
}
