//! Riemann's auxiliary function R(s), defined by Siegel's integral
//!
//! ```text
//! R(s) = ∫_{0↙1} x^(−s) e^(πix²) / (e^(πix) − e^(−πix)) dx
//! ```
//!
//! over a line of slope one crossing the real axis between 0 and 1, traversed
//! towards the lower left. Three evaluators are provided:
//!
//! * [`rzeta_quadrature`]: the integral itself, with the line moved to cross
//!   the real axis at ℓ + 1/2 (ℓ = ⌊ξ₁ − ξ₂⌋, ξ = √(s/2πi)) so that it runs
//!   through the saddle point in its steepest-descent direction. Each integer
//!   pole that is crossed contributes a residue n^(−s).
//! * [`rzeta_mainsum`]: the truncated Dirichlet sum Σ_{n≤ℓ} n^(−s).
//! * [`rzeta_left_asymptotic`]: the closed form valid far to the left of the
//!   critical line.
//!
//! The entire function F(s) = s π^(−s/2) Γ(s/2) R(s) and log J(s), the model of
//! F in the left region, live here as well.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{Quadrature, QuadratureEstimate};
use crate::special::{chi, log_gamma};

/// Largest |Im s| accepted by the quadrature evaluator.
pub const QUADRATURE_T_MAX: f64 = 500.0;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// η = √((s − 1)/2πi) on the branch Re η + Im η ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaBranch {
    pub s: Complex64,
    pub eta: Complex64,
    /// Set when Re η + Im η = 0, which happens only for real s ≥ 1.
    pub boundary: bool,
}

impl EtaBranch {
    /// e^(2πiη); has modulus at most one when σ ≤ 1 and t ≥ 0.
    pub fn exp_2pi_i_eta(&self) -> Complex64 {
        (2.0 * PI * I * self.eta).exp()
    }

    pub fn pi_i_eta(&self) -> Complex64 {
        PI * I * self.eta
    }
}

pub fn eta_branch(s: Complex64) -> EtaBranch {
    let w = (s - 1.0) / (2.0 * PI * I);
    if w.norm() == 0.0 {
        return EtaBranch {
            s,
            eta: c(0.0, 0.0),
            boundary: true,
        };
    }
    let mut eta = w.sqrt();
    let diag = eta.re + eta.im;
    let boundary = diag.abs() <= 1e-15 * eta.norm();
    if boundary {
        if eta.re < 0.0 {
            eta = -eta;
        }
    } else if diag < 0.0 {
        eta = -eta;
    }
    EtaBranch { s, eta, boundary }
}

/// ξ = √(s/2πi) on the branch with ξ₁ − ξ₂ ≥ 0, and ℓ = ⌊ξ₁ − ξ₂⌋.
///
/// For σ > 0 and t > 0 this is the root with 0 < −ξ₂ < ξ₁. The line of slope
/// one through ξ meets the real axis at ξ₁ − ξ₂, so ℓ counts the integer poles
/// of the kernel between the defining contour and the saddle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiDecomposition {
    pub xi: Complex64,
    pub ell: u64,
}

pub fn xi_decomposition(s: Complex64) -> XiDecomposition {
    let mut xi = (s / (2.0 * PI * I)).sqrt();
    if xi.re - xi.im < 0.0 {
        xi = -xi;
    }
    let ell = (xi.re - xi.im).floor().max(0.0) as u64;
    XiDecomposition { xi, ell }
}

/// A value together with the error its derivation claims.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxWithError {
    pub value: Complex64,
    pub claimed_abs_error: f64,
    pub claimed_rel_error: f64,
}

/// x^(−s) e^(πix²) / (e^(πix) − e^(−πix)), written with a single exponential
/// so that neither factor overflows on its own.
#[inline]
fn kernel(x: Complex64, s: Complex64) -> Complex64 {
    let pix = PI * I * x;
    let base = -s * x.ln() + pix * x;
    if x.im >= 0.0 {
        -(base + pix).exp() / (1.0 - (2.0 * pix).exp())
    } else {
        (base - pix).exp() / (1.0 - (-2.0 * pix).exp())
    }
}

fn dirichlet_partial(s: Complex64, ell: u64) -> (Complex64, f64) {
    let mut sum = c(0.0, 0.0);
    let mut mag = 0.0;
    for n in 1..=ell {
        let term = (-s * (n as f64).ln()).exp();
        mag += term.norm();
        sum += term;
    }
    (sum, mag)
}

/// R(s) by quadrature along the steepest-descent line.
///
/// `target_abs_error` is raised to the double-precision floor of the
/// computation (a small multiple of ε times the size of the integrand and
/// residue sum) when it asks for more than can be delivered.
pub fn rzeta_quadrature(
    s: Complex64,
    target_abs_error: f64,
) -> Result<QuadratureEstimate<Complex64>> {
    if !(target_abs_error >= 1e-13) {
        return Err(Error::InvalidInput(format!(
            "target error {target_abs_error:e} below 1e-13"
        )));
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite s = {s}")));
    }
    if s.im.abs() > QUADRATURE_T_MAX {
        return Err(Error::regime(
            "rzeta_quadrature",
            s,
            format!("|t| > {QUADRATURE_T_MAX}"),
        ));
    }
    let XiDecomposition { ell, .. } = xi_decomposition(s);
    let cross = ell as f64 + 0.5;
    let dir = c(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let g = |u: f64| kernel(cross + dir * u, s) * dir;

    // For σ < 0 the factor |x|^(−σ) moves the bulk of the integrand away
    // from the saddle, so the envelope is sampled over the whole range before
    // truncating where it has decayed far below its peak.
    const REACH: f64 = 40.0;
    let samples: Vec<(f64, f64)> = (-80..=80)
        .map(|k| {
            let u = 0.5 * f64::from(k);
            (u, g(u).norm())
        })
        .collect();
    let peak = samples.iter().map(|p| p.1).fold(0.0, f64::max);
    let (sum, sum_mag) = dirichlet_partial(s, ell);
    let scale = peak + sum_mag;
    let floor = 256.0 * f64::EPSILON * scale;
    let target = target_abs_error.max(floor);
    let cutoff = 1e-3 * target.min(floor.max(1e-300));
    let first = samples.iter().position(|p| p.1 > cutoff).unwrap_or(80);
    let last = samples.iter().rposition(|p| p.1 > cutoff).unwrap_or(80);
    let lo = (samples[first].0 - 1.0).max(-REACH);
    let hi = (samples[last].0 + 1.0).min(REACH);
    let breaks: Vec<f64> = (0..=((hi - lo) as usize)).map(|i| lo + i as f64).collect();
    let quad = Quadrature {
        abs_tol: 0.5 * target,
        rel_tol: 0.0,
        max_panels: 4000,
    };
    let est = quad.integrate_partition(|u| Ok(g(u)), &breaks)?;
    let tail = 2.0 * (g(lo).norm() + g(hi).norm());
    let value = sum - est.value;
    let error = est.abs_error_estimate + tail + 8.0 * f64::EPSILON * sum_mag;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::AccuracyUnreachable {
            best: value,
            error: f64::INFINITY,
            target,
        });
    }
    if error > target {
        return Err(Error::AccuracyUnreachable {
            best: value,
            error,
            target,
        });
    }
    Ok(QuadratureEstimate {
        value,
        abs_error_estimate: error,
        nodes_used: est.nodes_used + samples.len() + ell as usize,
        singular_points_excluded: Vec::new(),
        converged: est.converged,
    })
}

/// R(s) to (close to) full double precision.
pub fn rzeta(s: Complex64) -> Result<Complex64> {
    rzeta_quadrature(s, 1e-13).map(|e| e.value)
}

/// Constant of the main-sum remainder bound |R(s) − Σ_{n≤ℓ} n^(−s)| ≤ C |s/2πe|^(−σ/2).
pub const DEFAULT_MAINSUM_C: f64 = 2.0;

/// Σ_{n≤ℓ} n^(−s), valid for t > 0, σ > 0, |s| > 2πe².
pub fn rzeta_mainsum(s: Complex64, remainder_c: f64) -> Result<ApproxWithError> {
    let two_pi_e = 2.0 * PI * std::f64::consts::E;
    if !(s.im > 0.0) {
        return Err(Error::regime("rzeta_mainsum", s, "requires t > 0"));
    }
    if !(s.re > 0.0) {
        return Err(Error::regime("rzeta_mainsum", s, "requires σ > 0"));
    }
    if s.norm() <= two_pi_e * std::f64::consts::E {
        return Err(Error::regime("rzeta_mainsum", s, "requires |s| > 2πe²"));
    }
    let XiDecomposition { ell, .. } = xi_decomposition(s);
    let (value, _) = dirichlet_partial(s, ell);
    let abs = remainder_c * (s.norm() / two_pi_e).powf(-0.5 * s.re);
    Ok(ApproxWithError {
        value,
        claimed_abs_error: abs,
        claimed_rel_error: abs / value.norm(),
    })
}

/// Region 1 − σ ≥ t^exponent, t ≥ t_min where the left asymptotic applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRegime {
    pub t_min: f64,
    pub exponent: f64,
}

impl Default for AsymptoticRegime {
    fn default() -> Self {
        AsymptoticRegime {
            t_min: 100.0,
            exponent: 3.0 / 7.0,
        }
    }
}

impl AsymptoticRegime {
    pub fn contains(&self, s: Complex64) -> bool {
        s.im >= self.t_min && 1.0 - s.re >= s.im.powf(self.exponent)
    }

    fn check(&self, what: &'static str, s: Complex64) -> Result<()> {
        if s.im < self.t_min {
            return Err(Error::regime(
                what,
                s,
                format!("requires t >= {}", self.t_min),
            ));
        }
        if 1.0 - s.re < s.im.powf(self.exponent) {
            return Err(Error::regime(
                what,
                s,
                format!("requires 1 - σ >= t^{:.6}", self.exponent),
            ));
        }
        Ok(())
    }

    /// Abscissa of the regime edge at height t: σ = 1 − t^exponent.
    pub fn edge(&self, t: f64) -> f64 {
        1.0 - t.powf(self.exponent)
    }
}

/// Default constant A in |U(s)| ≤ A t^(−1/21).
pub const DEFAULT_ASYMPTOTIC_A: f64 = 1.0;

/// −χ(s) η^(s−1) e^(−πiη²) · √2 e^(3πi/8) sin πη / (2 cos 2πη), the left-region
/// approximation of R(s) with claimed relative error A t^(−1/21).
pub fn rzeta_left_asymptotic(
    s: Complex64,
    regime: &AsymptoticRegime,
    a_const: f64,
) -> Result<ApproxWithError> {
    regime.check("rzeta_left_asymptotic", s)?;
    let eta = eta_branch(s).eta;
    let cos2 = (2.0 * PI * eta).cos();
    if cos2.norm() < 1e-8 {
        return Err(Error::NearAsymptoticPole(s));
    }
    let phase = (s - 1.0) * eta.ln() - PI * I * eta * eta;
    let factor = c(0.0, 3.0 * PI / 8.0).exp() * (std::f64::consts::SQRT_2 / 2.0);
    let value = -chi(s)? * phase.exp() * factor * (PI * eta).sin() / cos2;
    let rel = a_const * s.im.powf(-1.0 / 21.0);
    Ok(ApproxWithError {
        value,
        claimed_abs_error: rel * value.norm(),
        claimed_rel_error: rel,
    })
}

/// log(s π^(−s/2) Γ(s/2)), computed as log 2 + log Γ(s/2 + 1) − (s/2) log π so
/// that the removable singularity at s = 0 causes no trouble.
pub fn log_comb(s: Complex64) -> Result<Complex64> {
    let z = s * 0.5 + 1.0;
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - nearest).norm() < 1e-8 {
        return Err(Error::regime(
            "bigF",
            s,
            "too close to a negative even integer, where Γ(s/2) has a pole",
        ));
    }
    Ok(std::f64::consts::LN_2 + log_gamma(z)? - s * 0.5 * PI.ln())
}

/// F(s) = s π^(−s/2) Γ(s/2) R(s).
#[allow(non_snake_case)]
pub fn bigF(s: Complex64) -> Result<Complex64> {
    Ok(log_comb(s)?.exp() * rzeta(s)?)
}

/// log |F(s)|, without forming F (which underflows for large t).
pub fn log_abs_bigf(s: Complex64) -> Result<f64> {
    Ok(log_comb(s)?.re + rzeta(s)?.norm().ln())
}

/// log(1 + w) that stays accurate for small |w|.
fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() < 1e-4 {
        w - w * w / 2.0 + w * w * w / 3.0 - w * w * w * w / 4.0
    } else {
        (1.0 + w).ln()
    }
}

/// The pieces of log J(s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogJ {
    pub value: Complex64,
    /// log((1 − e^(2πiη))/(1 + e^(4πiη))) as the difference of two principal logs.
    pub log_fraction: Complex64,
}

/// log J(s) = πis/4 + log s − ½ log((1−s)/2π) − 3πi/8 + πiη
///            + log((1 − e^(2πiη))/(1 + e^(4πiη))).
pub fn log_j(s: Complex64, regime: &AsymptoticRegime) -> Result<LogJ> {
    regime.check("log_j", s)?;
    Ok(log_j_formula(s))
}

/// [`log_j`] without the regime check.
pub fn log_j_formula(s: Complex64) -> LogJ {
    let eta = eta_branch(s);
    let z = eta.exp_2pi_i_eta();
    let log_fraction = ln_1p(-z) - ln_1p(z * z);
    let value =
        PI * I * s / 4.0 + s.ln() - 0.5 * ((1.0 - s) / (2.0 * PI)).ln() - c(0.0, 3.0 * PI / 8.0)
            + eta.pi_i_eta()
            + log_fraction;
    LogJ {
        value,
        log_fraction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // R(s) from the unshifted defining integral at 90 digits (mpmath).
    const ORACLE: [(f64, f64, f64, f64); 8] = [
        (4.0, 110.0, 1.042720532771043779, -0.062064350724784946004),
        (0.5, 30.0, 0.9408637535391796264, -0.49877905654109427366),
        (2.0, 10.0, 0.85083885711309736776, 0.12303165700906802705),
        (-1.0, 25.0, 0.98085387134155761875, 0.8906902217351334802),
        (3.0, -5.0, -83.791569436496397672, -112.73137763738409133),
        (2.0, 100.0, 1.1639224966808693549, -0.075473274498496159268),
        (-6.0, 40.0, -59.898404221552384302, -106.40430893986074323),
        (0.5, 0.0, -0.73017725440479340644, -0.20846508645200242882),
    ];

    #[test]
    fn quadrature_matches_high_precision_oracle() {
        for (sr, si, rr, ri) in ORACLE {
            let s = c(sr, si);
            let est = rzeta_quadrature(s, 1e-13).unwrap();
            let want = c(rr, ri);
            let err = (est.value - want).norm();
            assert!(err <= 1e-12 * want.norm().max(1.0), "s = {s}: err {err:e}");
            assert!(est.abs_error_estimate >= 0.0);
        }
    }

    #[test]
    fn quadrature_regime_and_input_errors() {
        assert!(matches!(
            rzeta_quadrature(c(1.0, 600.0), 1e-10),
            Err(Error::OutOfRegime { .. })
        ));
        assert!(matches!(
            rzeta_quadrature(c(1.0, 60.0), 1e-15),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn right_half_plane_near_one() {
        // |R(4+it) - 1| < 1/2 for t >= 32π
        let r = rzeta(c(4.0, 110.0)).unwrap();
        assert!((r - 1.0).norm() < 0.5);
    }

    #[test]
    fn eta_examples() {
        let e = eta_branch(c(1.0, 2.0 * PI));
        assert!((e.eta - 1.0).norm() < 1e-15);
        let e = eta_branch(c(1.0, -2.0 * PI));
        assert!((e.eta - I).norm() < 1e-15);
        let e = eta_branch(c(1.0, 0.0));
        assert!(e.boundary && e.eta == c(0.0, 0.0));
        assert!(!eta_branch(c(0.3, 5.0)).boundary);
    }

    #[test]
    fn xi_examples() {
        let d = xi_decomposition(c(2.0, 100.0));
        assert!((d.xi * d.xi - c(2.0, 100.0) / (2.0 * PI * I)).norm() < 1e-14);
        assert!(d.xi.im < 0.0 && -d.xi.im < d.xi.re);
        assert_eq!(d.ell, (d.xi.re - d.xi.im).floor() as u64);
    }

    #[test]
    fn mainsum_matches_direct_sum_and_regime() {
        let s = c(30.0, 60.0);
        let d = xi_decomposition(s);
        let m = rzeta_mainsum(s, DEFAULT_MAINSUM_C).unwrap();
        let direct: Complex64 = (1..=d.ell)
            .map(|n| Complex64::new(n as f64, 0.0).powc(-s))
            .sum();
        assert!(d.ell >= 3);
        assert!((m.value - direct).norm() < 1e-15);
        let r = rzeta(s).unwrap();
        assert!((r - m.value).norm() <= m.claimed_abs_error);
        assert!(matches!(
            rzeta_mainsum(c(-1.0, 100.0), 1.0),
            Err(Error::OutOfRegime { .. })
        ));
        assert!(matches!(
            rzeta_mainsum(c(1.0, 10.0), 1.0),
            Err(Error::OutOfRegime { .. })
        ));
    }

    #[test]
    fn asymptotic_regime_errors() {
        let reg = AsymptoticRegime::default();
        assert!(matches!(
            rzeta_left_asymptotic(c(-50.0, 90.0), &reg, 1.0),
            Err(Error::OutOfRegime { .. })
        ));
        assert!(matches!(
            rzeta_left_asymptotic(c(-2.0, 200.0), &reg, 1.0),
            Err(Error::OutOfRegime { .. })
        ));
    }

    #[test]
    fn comb_near_origin_is_finite() {
        // s Γ(s/2) → 2 as s → 0
        let v = log_comb(c(1e-12, 0.0)).unwrap().exp();
        assert!((v - 2.0).norm() < 1e-9);
        assert!(log_comb(c(-4.0, 1e-10)).is_err());
    }

    #[test]
    fn log_fraction_small_limit() {
        // deep in the left region e^(2πiη) is tiny
        let s = c(-300.0, 110.0);
        let lj = log_j_formula(s);
        let z = eta_branch(s).exp_2pi_i_eta();
        assert!(z.norm() <= 1e-10, "{}", z.norm());
        assert!((lj.log_fraction + z).norm() <= 1e-3 * z.norm());
    }
}
