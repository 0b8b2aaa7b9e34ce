use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{integrate_vertical, log_modulus_line_integral, LineFunction, Report};
use crate::error::{Error, Result};
use crate::quad::Quadrature;
use crate::rzeta::{eta_branch, log_j_formula};
use crate::special::{per, PerSeries};
use crate::zeros::ZeroRecord;

/// Closed form of ∫_{t0}^T log|Γ((σ+it)/2)| dt up to an error of at most
/// 3√3/16, with principal arguments.
pub fn gamma_half_mean_closed(sigma: f64, t0: f64, t: f64) -> f64 {
    let s2 = sigma * sigma;
    let arg = |y: f64| y.atan2(sigma);
    let ln2 = 2f64.ln();
    let ln2pi = (2.0 * PI).ln();
    let at = |y: f64| {
        (-y * y / 4.0 + s2 / 4.0 - sigma / 2.0 + 1.0 / 6.0) * arg(y)
            + (sigma * y / 4.0 - y / 4.0) * (s2 + y * y).ln()
            - sigma * (3.0 * y / 4.0 + y * ln2 / 2.0)
            + y / 2.0
            + y / 2.0 * ln2
            + y / 2.0 * ln2pi
    };
    at(t) - at(t0)
}

/// Bound on the error of [`gamma_half_mean_closed`].
pub const GAMMA_MEAN_BOUND: f64 = 0.324_759_526_419_164_7; // 3√3/16

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaMeanSample {
    pub sigma: f64,
    pub t: f64,
    pub numeric: f64,
    pub closed: f64,
    pub deviation: f64,
}

/// Compares quadrature and closed form of the Γ mean on `n` random pairs
/// σ ∈ [−30, 10], T ∈ [2, 100], with t₀ = 1.
pub fn gamma_mean_check(n: usize, seed: u64) -> Result<Report> {
    let t0 = 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(-30.0..=10.0), rng.gen_range(2.0..=100.0)))
        .collect();
    let samples: Vec<GammaMeanSample> = pairs
        .par_iter()
        .map(|&(sigma, t)| {
            let numeric = log_modulus_line_integral(
                LineFunction::GammaHalf,
                sigma,
                t0,
                t,
                &[],
                Some(1e-9 * t),
            )?
            .value();
            let closed = gamma_half_mean_closed(sigma, t0, t);
            Ok(GammaMeanSample {
                sigma,
                t,
                numeric,
                closed,
                deviation: numeric - closed,
            })
        })
        .collect::<Result<_>>()?;
    let worst = samples
        .iter()
        .map(|s| s.deviation.abs())
        .fold(0.0, f64::max);
    let mut rep = Report::new(
        "gamma-mean",
        json!({ "samples": n, "seed": seed, "t0": t0 }),
    )
    .constant("bound", GAMMA_MEAN_BOUND);
    rep.lhs = worst;
    rep.rhs = GAMMA_MEAN_BOUND;
    rep.residual = worst;
    rep.pass = worst <= GAMMA_MEAN_BOUND;
    rep.details = json!({ "samples": samples });
    Ok(rep)
}

/// Heights on σ = 1 where log((1 − e^(2πiη))/(1 + e^(4πiη))) has a
/// logarithmic singularity: η ∈ ℤ or η ∈ ¼ + ½ℤ.
fn per_singularities(t0: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut k = 0u64;
    loop {
        let eta = 0.25 * k as f64;
        let y = 2.0 * PI * eta * eta;
        if y >= t {
            break;
        }
        // multiples of ½ that are not integers are regular points
        if y > t0 && k % 4 != 2 {
            out.push(y);
        }
        k += 1;
    }
    out
}

/// ∫_{t0}^T Re log((1 − e^(2πiη))/(1 + e^(4πiη))) dt along s = 1 + it.
pub fn per_integral_lhs(t0: f64, t: f64) -> Result<f64> {
    if !(t0 >= 1.0 && t >= t0) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= t0 <= T, got {t0}, {t}"
        )));
    }
    let g = |s: Complex64| -> Result<f64> {
        let z = eta_branch(s).exp_2pi_i_eta();
        Ok(((1.0 - z).ln() - (1.0 + z * z).ln()).re)
    };
    Ok(integrate_vertical(
        g,
        1.0,
        t0,
        t,
        &per_singularities(t0, t),
        1e-8 * (t - t0).max(1.0),
    )?
    .value)
}

/// Residual of ∫ Re log(...) dt = −√(T/2π) per(√(T/2π)) + O(1) over a T grid,
/// bounded by κ₃.
pub fn per_integral_check(t_grid: &[f64], t0: f64, kappa3: f64) -> Result<Report> {
    if t_grid.iter().any(|t| *t > 500.0 || *t < t0) {
        return Err(Error::InvalidInput("T grid must lie in [t0, 500]".into()));
    }
    let rows: Vec<(f64, f64, f64)> = t_grid
        .par_iter()
        .map(|&t| {
            let lhs = per_integral_lhs(t0, t)?;
            let tau = (t / (2.0 * PI)).sqrt();
            Ok((t, lhs, -tau * per(tau, PerSeries::default())))
        })
        .collect::<Result<_>>()?;
    let worst = rows.iter().map(|r| (r.1 - r.2).abs()).fold(0.0, f64::max);
    let mut rep =
        Report::new("per-integral", json!({ "T": t_grid, "t0": t0 })).constant("kappa3", kappa3);
    if let Some(last) = rows.last() {
        rep.lhs = last.1;
        rep.rhs = last.2;
    }
    rep.residual = worst;
    rep.pass = worst <= kappa3;
    rep.details = json!({
        "rows": rows.iter().map(|r| json!({ "T": r.0, "lhs": r.1, "rhs": r.2, "residual": r.1 - r.2 })).collect::<Vec<_>>()
    });
    Ok(rep)
}

/// −π(1−σ₀)(T/2π)^(1/2) + (√π/3)(1−σ₀)^(3/2).
pub fn littlemean_closed(one_minus_sigma: f64, t: f64) -> f64 {
    -PI * one_minus_sigma * (t / (2.0 * PI)).sqrt() + PI.sqrt() / 3.0 * one_minus_sigma.powf(1.5)
}

/// The exact value −(4π²/3) Im[w_T^(3/2) − w_{t0}^(3/2)] of ∫_{t0}^T Re(πiη) dt,
/// with w = (s − 1)/2πi = (t + i(1−σ))/2π.
pub fn littlemean_exact(one_minus_sigma: f64, t0: f64, t: f64) -> f64 {
    let w = |y: f64| Complex64::new(y, one_minus_sigma) / (2.0 * PI);
    -4.0 * PI * PI / 3.0 * (w(t).powf(1.5) - w(t0).powf(1.5)).im
}

/// Quadrature of ∫ log|e^(πiη)| dt on σ₀ = 1 − T^(3/7) against the closed
/// form; the residual should be at most κ₄ T^(3/14).
pub fn littlemean_check(t: f64, t0: f64, kappa4: f64) -> Result<Report> {
    if !(t0 >= 1.0 && t >= t0) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= t0 <= T, got {t0}, {t}"
        )));
    }
    let d = t.powf(3.0 / 7.0);
    let sigma0 = 1.0 - d;
    let q = Quadrature::with_abs_tol(1e-10 * t);
    let numeric = q
        .integrate(
            |y: f64| Ok(eta_branch(Complex64::new(sigma0, y)).pi_i_eta().re),
            t0,
            t,
        )?
        .value;
    let closed = littlemean_closed(d, t);
    let exact = littlemean_exact(d, t0, t);
    let norm = t.powf(3.0 / 14.0);
    let mut rep = Report::new("littlemean", json!({ "T": t, "t0": t0, "sigma0": sigma0 }))
        .constant("kappa4", kappa4);
    rep.lhs = numeric;
    rep.rhs = closed;
    rep.residual = (numeric - closed).abs() / norm;
    rep.normalizer = norm;
    rep.pass = rep.residual <= kappa4;
    rep.details = json!({ "exact_antiderivative": exact, "quadrature_vs_exact": numeric - exact });
    Ok(rep)
}

fn sigma0(t: f64) -> f64 {
    1.0 - t.powf(3.0 / 7.0)
}

/// −πT²/8 + T/2 log T − T/2 + T/2 log 2π
fn mean_main(t: f64) -> f64 {
    -PI * t * t / 8.0 + 0.5 * t * t.ln() - 0.5 * t + 0.5 * t * (2.0 * PI).ln()
}

/// ∫_{t0}^T log|J(σ₀+it)| dt against the main form and the refined form
/// with the per term. The main residual is divided by T^(3/7+1/2).
pub fn mean_j_check(t: f64, t0: f64, kappa5: f64) -> Result<Report> {
    if !(t0 >= 1.0 && t >= t0 && t <= 400.0) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= t0 <= T <= 400, got {t0}, {t}"
        )));
    }
    let s0 = sigma0(t);
    let numeric =
        integrate_vertical(|s| Ok(log_j_formula(s).value.re), s0, t0, t, &[], 1e-8 * t)?.value;
    let main = mean_main(t);
    let root = (t / (2.0 * PI)).sqrt();
    let refined = main + PI * s0 * root - (PI + per(root, PerSeries::default())) * root
        + PI.sqrt() / 3.0 * (1.0 - s0).powf(1.5);
    let norm = t.powf(3.0 / 7.0 + 0.5);
    let mut rep =
        Report::new("mean-j", json!({ "T": t, "t0": t0, "sigma0": s0 })).constant("kappa5", kappa5);
    rep.lhs = numeric;
    rep.rhs = main;
    rep.residual = (numeric - main).abs() / norm;
    rep.normalizer = norm;
    rep.pass = rep.residual <= kappa5;
    rep.details = json!({
        "refined": refined,
        "main_residual": numeric - main,
        "refined_residual": numeric - refined,
        "refined_smaller": (numeric - refined).abs() <= (numeric - main).abs(),
        "ratio_to_leading": numeric / (-PI * t * t / 8.0),
    });
    Ok(rep)
}

/// −πT²/8 + (σ+1)(T/2 log T/2π − T/2) + T/2 (log 2 + 2 log 2π) − πσ²/8
fn log_f_remainder(sigma: f64, t: f64) -> f64 {
    -PI * t * t / 8.0
        + (sigma + 1.0) * (0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t)
        + 0.5 * t * (2f64.ln() + 2.0 * (2.0 * PI).ln())
        - PI * sigma * sigma / 8.0
}

/// −πT²/8 + (σ−1)(T/2 log T/2 − T/2) + T/2 log 2π − πσ²/8
fn gamma_mean_asymptotic(sigma: f64, t: f64) -> f64 {
    -PI * t * t / 8.0
        + (sigma - 1.0) * (0.5 * t * (t / 2.0).ln() - 0.5 * t)
        + 0.5 * t * (2.0 * PI).ln()
        - PI * sigma * sigma / 8.0
}

/// ∫_{t0}^T log|Γ((σ+it)/2)| dt against its asymptotic form, the residual
/// divided by T^(1/2) and bounded by κ₆. The asymptotic form describes the
/// integral from near zero, so κ₆ is only meaningful for small t₀ such as
/// [`MEAN_T0`](super::MEAN_T0).
pub fn gamma_asymptotic_check(sigma: f64, t: f64, t0: f64, kappa6: f64) -> Result<Report> {
    let g_int =
        log_modulus_line_integral(LineFunction::GammaHalf, sigma, t0, t, &[], None)?.value();
    let closed = gamma_mean_asymptotic(sigma, t);
    let half = t.sqrt();
    let mut rep = Report::new(
        "gamma-asymptotic",
        json!({ "sigma": sigma, "T": t, "t0": t0 }),
    )
    .constant("kappa6", kappa6);
    rep.lhs = g_int;
    rep.rhs = closed;
    rep.residual = (g_int - closed).abs() / half;
    rep.normalizer = half;
    rep.pass = rep.residual <= kappa6;
    Ok(rep)
}

/// Splits ∫ log|F(σ+it)| into the R part and the Γ-plus-s-factor remainder,
/// and compares the remainder and the Γ mean with their asymptotic forms
/// (residuals over T^(1/2), bounded by κ₆). On the edge σ = 1 − T^(3/7) the
/// whole integral is also compared with its main form (residual over
/// T^(20/21), bounded by κ₇). As in [`gamma_asymptotic_check`], the forms
/// assume a small t₀.
pub fn log_f_decomposition_check(
    sigma: f64,
    t: f64,
    t0: f64,
    zeros: &[ZeroRecord],
    kappa6: f64,
    kappa7: f64,
) -> Result<Report> {
    let d = t.powf(3.0 / 7.0);
    if !(sigma <= 10.0 && 1.0 - sigma <= d * (1.0 + 1e-12) && t <= 400.0) {
        return Err(Error::InvalidInput(format!(
            "need 1 − σ <= T^(3/7), σ <= 10, T <= 400; got σ = {sigma}, T = {t}"
        )));
    }
    let on_edge = ((1.0 - sigma) - d).abs() <= 1e-9 * d;
    let f_int = log_modulus_line_integral(LineFunction::F, sigma, t0, t, zeros, None)?;
    let r_int =
        log_modulus_line_integral(LineFunction::R, f_int.sigma_used, t0, t, zeros, None)?.value();
    let g_int =
        log_modulus_line_integral(LineFunction::GammaHalf, sigma, t0, t, &[], None)?.value();
    let remainder = f_int.value() - r_int;
    let half = t.sqrt();
    let p19 = (remainder - log_f_remainder(sigma, t)).abs() / half;
    let gam = (g_int - gamma_mean_asymptotic(sigma, t)).abs() / half;
    let mut pass = p19 <= kappa6 && gam <= kappa6;
    let mut details = json!({
        "log_f_integral": f_int.value(),
        "log_r_integral": r_int,
        "gamma_integral": g_int,
        "remainder_closed": log_f_remainder(sigma, t),
        "gamma_closed": gamma_mean_asymptotic(sigma, t),
        "remainder_normalized": p19,
        "gamma_normalized": gam,
    });
    if on_edge {
        let p20 = (f_int.value() - mean_main(t)).abs() / t.powf(20.0 / 21.0);
        pass &= p20 <= kappa7;
        details["edge_main"] = json!(mean_main(t));
        details["edge_normalized"] = json!(p20);
    }
    let mut rep = Report::new(
        "log-f",
        json!({ "sigma": sigma, "T": t, "t0": t0, "edge": on_edge }),
    )
    .constant("kappa6", kappa6)
    .constant("kappa7", kappa7);
    rep.lhs = remainder;
    rep.rhs = log_f_remainder(sigma, t);
    rep.residual = p19;
    rep.normalizer = half;
    rep.pass = pass;
    rep.details = details;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_singular_heights() {
        let s = per_singularities(1.0, 30.0);
        let want: Vec<f64> = [0.75f64, 1.0, 1.25, 1.75, 2.0]
            .iter()
            .map(|e| 2.0 * PI * e * e)
            .filter(|y| *y < 30.0)
            .collect();
        assert_eq!(s, want);
    }

    #[test]
    fn littlemean_degenerate_and_exact() {
        assert_eq!(littlemean_closed(0.0, 200.0), 0.0);
        assert!(littlemean_exact(0.0, 2.0, 200.0).abs() < 1e-12);
        let d = 200f64.powf(3.0 / 7.0);
        let e = littlemean_exact(d, 2.0, 200.0);
        let q = Quadrature::with_abs_tol(1e-10)
            .integrate(
                |y: f64| Ok(eta_branch(Complex64::new(1.0 - d, y)).pi_i_eta().re),
                2.0,
                200.0,
            )
            .unwrap()
            .value;
        assert!((e - q).abs() < 1e-7);
    }
}
