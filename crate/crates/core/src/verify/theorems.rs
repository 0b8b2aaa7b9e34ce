use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use super::{
    cumulative_line_integrals, integrate_vertical, log_modulus_line_integral, LineFunction, Report,
};
use crate::error::{Error, Result};
use crate::rzeta::{rzeta, rzeta_left_asymptotic, AsymptoticRegime};
use crate::zeros::{count_stats, ZeroCatalog};
use crate::zeta::{omega_g, z_sign_changes};

fn check_grid(grid: &[f64], t0: f64) -> Result<()> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] < t0 {
        return Err(Error::InvalidInput(format!(
            "T grid must be nonempty, increasing and start at or above t0 = {t0}"
        )));
    }
    Ok(())
}

/// T/2 log(T/2π) − T/2
fn count_shape(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t
}

/// ∫_{t0}^T log|R(σ+it)| dt against 2π Σ_{β>σ} (β − σ); the residual
/// divided by log T should stay below κ₁.
pub fn thm1_check(
    sigma: f64,
    t_grid: &[f64],
    catalog: &ZeroCatalog,
    t0: f64,
    kappa1: f64,
) -> Result<Report> {
    if sigma > 1.0 {
        return Err(Error::InvalidInput(format!("σ = {sigma} > 1")));
    }
    check_grid(t_grid, t0)?;
    let ints = cumulative_line_integrals(LineFunction::R, sigma, t0, t_grid, &catalog.records)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut last = (0.0, 0.0);
    for (&t, &int) in t_grid.iter().zip(&ints) {
        let st = count_stats(catalog, sigma, t)?;
        let rhs = 2.0 * PI * st.sum_excess_gt;
        let r = (int - rhs).abs();
        let norm = r / t.ln();
        worst = worst.max(norm);
        rows.push(
            json!({ "T": t, "integral": int, "zero_sum": rhs, "residual": r, "normalized": norm }),
        );
        last = (int, rhs);
    }
    let mut rep = Report::new("thm1", json!({ "sigma": sigma, "T": t_grid, "t0": t0 }))
        .constant("kappa1", kappa1);
    rep.lhs = last.0;
    rep.rhs = last.1;
    rep.residual = worst;
    rep.normalizer = t_grid.last().unwrap().ln();
    rep.pass = worst <= kappa1;
    rep.details = json!({ "rows": rows });
    Ok(rep)
}

/// Both sides of the second Littlewood theorem on a T grid:
/// 2π Σ_{β≤σ}(σ − β) against σ(T/2 log T/2π − T/2) + T/2 log 2 + ∫ log|R(σ+it)|.
/// Residuals are divided by T^(20/21).
pub fn thm2_check(
    sigma: f64,
    t_grid: &[f64],
    catalog: &ZeroCatalog,
    t0: f64,
    kappa2: f64,
) -> Result<Report> {
    if sigma > 10.0 {
        return Err(Error::InvalidInput(format!("σ = {sigma} > 10")));
    }
    check_grid(t_grid, t0)?;
    let ints = cumulative_line_integrals(LineFunction::R, sigma, t0, t_grid, &catalog.records)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut last = (0.0, 0.0);
    for (&t, &int) in t_grid.iter().zip(&ints) {
        let st = count_stats(catalog, sigma, t)?;
        let lhs = 2.0 * PI * st.sum_excess_le;
        let rhs = sigma * count_shape(t) + 0.5 * t * 2f64.ln() + int;
        let norm = (lhs - rhs).abs() / t.powf(20.0 / 21.0);
        worst = worst.max(norm);
        rows.push(json!({ "T": t, "lhs": lhs, "rhs": rhs, "integral": int, "normalized": norm }));
        last = (lhs, rhs);
    }
    let mut rep = Report::new("thm2", json!({ "sigma": sigma, "T": t_grid, "t0": t0 }))
        .constant("kappa2", kappa2);
    rep.lhs = last.0;
    rep.rhs = last.1;
    rep.residual = worst;
    rep.normalizer = t_grid.last().unwrap().powf(20.0 / 21.0);
    rep.pass = worst <= kappa2;
    rep.details = json!({ "rows": rows });
    Ok(rep)
}

/// The count obtained by subtracting the second theorem at σ = 4 from the
/// one at σ = 5, against the catalog count N_R(T).
pub fn thm2_count_difference(
    t_grid: &[f64],
    catalog: &ZeroCatalog,
    t0: f64,
    kappa2: f64,
) -> Result<Report> {
    check_grid(t_grid, t0)?;
    let i5 = cumulative_line_integrals(LineFunction::R, 5.0, t0, t_grid, &catalog.records)?;
    let i4 = cumulative_line_integrals(LineFunction::R, 4.0, t0, t_grid, &catalog.records)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut last = (0.0, 0.0);
    for (k, &t) in t_grid.iter().enumerate() {
        let n = catalog.count(t)? as f64;
        let predicted = (count_shape(t) + i5[k] - i4[k]) / (2.0 * PI);
        let norm = (n - predicted).abs() / t.powf(20.0 / 21.0);
        worst = worst.max(norm);
        rows.push(json!({ "T": t, "count": n, "predicted": predicted, "normalized": norm }));
        last = (n, predicted);
    }
    let mut rep =
        Report::new("thm2-count", json!({ "T": t_grid, "t0": t0 })).constant("kappa2", kappa2);
    rep.lhs = last.0;
    rep.rhs = last.1;
    rep.residual = worst;
    rep.normalizer = t_grid.last().unwrap().powf(20.0 / 21.0);
    rep.pass = worst <= kappa2;
    rep.details = json!({ "rows": rows });
    Ok(rep)
}

/// |∫_{t0}^T log|R(σ+it)| dt| · 2^σ for each σ, with a single bound C and a
/// decreasing trend in σ.
pub fn thm3_check(sigmas: &[f64], t: f64, t0: f64, c_max: f64) -> Result<Report> {
    if sigmas.iter().any(|s| *s < 3.5) {
        return Err(Error::InvalidInput("every σ must be >= 3.5".into()));
    }
    let mut rows = Vec::new();
    let mut scaled = Vec::new();
    let mut mags = Vec::new();
    for &s in sigmas {
        let int = log_modulus_line_integral(
            LineFunction::R,
            s,
            t0,
            t,
            &[],
            Some(1e-9 * (t - t0).max(1.0)),
        )?;
        let v = int.value();
        scaled.push(v.abs() * 2f64.powf(s));
        mags.push(v.abs());
        rows.push(json!({ "sigma": s, "integral": v, "scaled": v.abs() * 2f64.powf(s) }));
    }
    let c_fit = scaled.iter().copied().fold(0.0, f64::max);
    let decreasing = mags.windows(2).all(|w| w[1] < w[0]) || t == t0;
    let mut rep =
        Report::new("thm3", json!({ "sigmas": sigmas, "T": t, "t0": t0 })).constant("C", c_max);
    rep.lhs = c_fit;
    rep.rhs = c_max;
    rep.residual = c_fit;
    rep.normalizer = 1.0;
    rep.pass = c_fit <= c_max && decreasing;
    rep.details = json!({ "rows": rows, "fitted_C": c_fit, "decreasing": decreasing });
    Ok(rep)
}

/// Jensen's bound ∫_{t0}^T log|R(σ′+it)| ≤ (T/2) log((1/T)∫_0^T |R|²), plus
/// the mean square against 2/((1−2σ′)(3−2σ′)) (T/2π)^(½−σ′).
pub fn jensen_meansquare_check(
    sigma_p: f64,
    t: f64,
    t0: f64,
    catalog: Option<&ZeroCatalog>,
) -> Result<Report> {
    if sigma_p > 0.25 {
        return Err(Error::InvalidInput(format!("σ′ = {sigma_p} > 1/4")));
    }
    let zeros = catalog.map(|c| c.records.as_slice()).unwrap_or(&[]);
    let log_int = log_modulus_line_integral(LineFunction::R, sigma_p, t0, t, zeros, None)?.value();
    let sq = integrate_vertical(|s| Ok(rzeta(s)?.norm_sqr()), sigma_p, 0.0, t, &[], 1e-8 * t)?;
    let mean_square = sq.value / t;
    let predicted = 2.0 / ((1.0 - 2.0 * sigma_p) * (3.0 - 2.0 * sigma_p))
        * (t / (2.0 * PI)).powf(0.5 - sigma_p);
    let rel = (mean_square - predicted).abs() / predicted;
    let rhs = 0.5 * t * mean_square.ln();
    let mut rep = Report::new(
        "jensen",
        json!({ "sigma_prime": sigma_p, "T": t, "t0": t0 }),
    )
    .constant("mean_square_rel_tol", MEAN_SQUARE_TOL);
    rep.lhs = log_int;
    rep.rhs = rhs;
    rep.residual = rhs - log_int;
    rep.normalizer = t;
    rep.pass = log_int < rhs && rel <= MEAN_SQUARE_TOL;
    rep.details = json!({ "mean_square": mean_square, "predicted_mean_square": predicted, "relative_deviation": rel });
    Ok(rep)
}

/// Relative tolerance of the mean-square comparison.
pub const MEAN_SQUARE_TOL: f64 = 0.2;

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Relative error of the left-region product against quadrature at the
/// heights `ts`, on the edge 1 − σ = t^(3/7). Fits A in rel ≤ A t^(−1/21)
/// and compares the median error over the lower half of the heights with
/// the median over the upper half. Heights where the product is refused
/// (cos 2πη ≈ 0) are listed and skipped.
pub fn left_asymptotic_check(ts: &[f64], a_max: f64) -> Result<Report> {
    if ts.len() < 2 || ts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "need at least two increasing heights".into(),
        ));
    }
    let regime = AsymptoticRegime::default();
    let mut rows = Vec::new();
    let mut refused = Vec::new();
    let mut rels = Vec::new();
    for &t in ts {
        let s = Complex64::new(regime.edge(t), t);
        let approx = match rzeta_left_asymptotic(s, &regime, 1.0) {
            Ok(a) => a.value,
            Err(Error::NearAsymptoticPole(_)) => {
                refused.push(t);
                continue;
            }
            Err(e) => return Err(e),
        };
        let exact = rzeta(s)?;
        let rel = (approx - exact).norm() / exact.norm();
        rels.push(rel);
        rows.push(json!({ "t": t, "sigma": s.re, "relative_error": rel, "scaled": rel * t.powf(1.0 / 21.0) }));
    }
    if rels.len() < 2 {
        return Err(Error::InvalidInput("fewer than two usable heights".into()));
    }
    let a_fit = rows
        .iter()
        .map(|r| r["scaled"].as_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let half = rels.len() / 2;
    let lower = median(&mut rels[..half].to_vec());
    let upper = median(&mut rels[rels.len() - half..].to_vec());
    let mut rep = Report::new("left-asymptotic", json!({ "t": ts })).constant("A", a_max);
    rep.lhs = a_fit;
    rep.rhs = a_max;
    rep.residual = a_fit;
    rep.pass = a_fit <= a_max && upper < lower;
    rep.details = json!({
        "rows": rows,
        "refused": refused,
        "fitted_A": a_fit,
        "median_lower_half": lower,
        "median_upper_half": upper,
    });
    Ok(rep)
}

/// Phase track step used by [`omega_count_check`].
pub const OMEGA_STEP: f64 = 0.02;

/// ω(T)/2π with ω(1) = −arg R(½+i) against the catalog count of zeros with
/// β ≥ ½ and γ ≤ T; the difference divided by log T should stay below κ.
pub fn omega_count_check(catalog: &ZeroCatalog, t_grid: &[f64], kappa: f64) -> Result<Report> {
    check_grid(t_grid, 1.0)?;
    let t_max = *t_grid.last().unwrap();
    catalog.check_frontier(t_max)?;
    let track = omega_g(1.0, t_max, OMEGA_STEP)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut last = (0.0, 0.0);
    for &t in t_grid {
        let est = track.count_estimate(t)?;
        let n = catalog
            .up_to(t)
            .filter(|z| z.beta >= 0.5)
            .map(|z| u64::from(z.multiplicity))
            .sum::<u64>() as f64;
        let norm = (est - n).abs() / t.ln();
        worst = worst.max(norm);
        rows.push(json!({ "T": t, "omega_over_2pi": est, "count_right": n, "normalized": norm }));
        last = (est, n);
    }
    let mut rep = Report::new("omega-count", json!({ "T": t_grid })).constant("kappa_omega", kappa);
    rep.lhs = last.0;
    rep.rhs = last.1;
    rep.residual = worst;
    rep.normalizer = t_max.ln();
    rep.pass = worst <= kappa;
    rep.details = json!({ "rows": rows });
    Ok(rep)
}

/// Sign changes of Z(t) on (t_lo, t_hi] against the zeros of cos(θ − ω)
/// plus the catalog zeros of R on σ = ½; the counts should agree within one.
pub fn critical_line_check(
    catalog: &ZeroCatalog,
    t_lo: f64,
    t_hi: f64,
    step: f64,
) -> Result<Report> {
    catalog.check_frontier(t_hi)?;
    let track = omega_g(t_lo, t_hi, step)?;
    let cos_zeros = track.cos_phase_zeros(t_lo, t_hi);
    let on_line = catalog
        .up_to(t_hi)
        .filter(|z| z.gamma > t_lo && (z.beta - 0.5).abs() < 1e-9)
        .count();
    let sign_changes = z_sign_changes(t_lo, t_hi, step)?;
    let lhs = sign_changes as f64;
    let rhs = (cos_zeros + on_line) as f64;
    let mut rep = Report::new(
        "critical-line",
        json!({ "t_lo": t_lo, "t_hi": t_hi, "step": step }),
    );
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = (lhs - rhs).abs();
    rep.pass = rep.residual <= 1.0;
    rep.details = json!({
        "z_sign_changes": sign_changes,
        "cos_phase_zeros": cos_zeros,
        "catalog_zeros_on_line": on_line,
        "perturbed_samples": track.perturbed,
    });
    Ok(rep)
}
