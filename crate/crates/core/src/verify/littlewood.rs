use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{integrate_vertical, singular_ordinates, Report};
use crate::error::{Error, Result};
use crate::quad::Quadrature;
use crate::special::{ArgTrackOptions, ContinuousArg};
use crate::zeros::{RectangleRegion, Which, ZeroRecord};

/// The four boundary terms of Littlewood's identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LittlewoodSides {
    /// ∫_c^d log|f(a+iy)| dy
    pub left: f64,
    /// ∫_c^d log|f(b+iy)| dy
    pub right: f64,
    /// ∫_a^b arg f(x+ic) dx
    pub bottom: f64,
    /// ∫_a^b arg f(x+id) dx
    pub top: f64,
    pub quadrature_error: f64,
}

impl LittlewoodSides {
    pub fn boundary_total(&self) -> f64 {
        self.left - self.right - self.bottom + self.top
    }
}

const ARG_TOL: f64 = 1e-9;

/// ∫ arg f along a tracked horizontal side, the argument being continued
/// from the tracked samples.
fn arg_integral(
    which: Which,
    track: &ContinuousArg,
    from: Complex64,
    to: Complex64,
) -> Result<(f64, f64)> {
    let len = (to - from).norm();
    let q = Quadrature {
        abs_tol: ARG_TOL * len.max(1.0),
        rel_tol: 0.0,
        max_panels: 20_000,
    };
    let n = (len.ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let est = q.integrate_partition(
        |tau| {
            let z = from + (to - from) * tau;
            Ok(track.arg_at(which.eval(z)?, tau))
        },
        &breaks,
    )?;
    Ok((est.value * len, est.abs_error_estimate * len))
}

/// Evaluates both sides of Littlewood's identity on `rect`:
///
/// 2π Σ (β − a) = ∫ log|f(a+iy)| − ∫ log|f(b+iy)| − ∫ arg f(x+ic) + ∫ arg f(x+id),
///
/// the sum running over the given zeros inside the rectangle.
pub fn littlewood_closure(
    rect: &RectangleRegion,
    which: Which,
    zeros: &[ZeroRecord],
) -> Result<Report> {
    let (a, b, c, d) = (rect.sigma_min, rect.sigma_max, rect.t_min, rect.t_max);
    let ca = Complex64::new(a, c);
    let cb = Complex64::new(b, c);
    let cc = Complex64::new(b, d);
    let cd = Complex64::new(a, d);
    for z in zeros {
        let on_side = ((z.gamma - c).abs() < 1e-9 || (z.gamma - d).abs() < 1e-9)
            && z.beta >= a
            && z.beta <= b
            || ((z.beta - a).abs() < 1e-9 || (z.beta - b).abs() < 1e-9)
                && z.gamma >= c
                && z.gamma <= d;
        if on_side {
            return Err(Error::BoundaryZero {
                from: z.rho(),
                to: z.rho(),
            });
        }
    }
    let f = |z: Complex64| which.eval(z);
    let opts = ArgTrackOptions::default();
    let bottom_track = ContinuousArg::track(f, ca, cb, None, opts)?;
    let right_track = ContinuousArg::track(f, cb, cc, Some(bottom_track.end_arg()), opts)?;
    let top_track = ContinuousArg::track(f, cc, cd, Some(right_track.end_arg()), opts)?;

    let log_abs = |s: Complex64| -> Result<f64> { Ok(which.eval(s)?.norm().ln()) };
    let tol = 1e-8 * rect.height().max(1.0);
    let left = integrate_vertical(log_abs, a, c, d, &singular_ordinates(zeros, a, c, d), tol)?;
    let right = integrate_vertical(log_abs, b, c, d, &singular_ordinates(zeros, b, c, d), tol)?;
    let (bottom, e_bottom) = arg_integral(which, &bottom_track, ca, cb)?;
    // the top side is tracked from right to left, so its integral over [a, b]
    // is the integral along the track
    let (top, e_top) = arg_integral(which, &top_track, cc, cd)?;
    let sides = LittlewoodSides {
        left: left.value,
        right: right.value,
        bottom,
        top,
        quadrature_error: left.abs_error_estimate + right.abs_error_estimate + e_bottom + e_top,
    };
    let inside: Vec<&ZeroRecord> = zeros
        .iter()
        .filter(|z| z.beta >= a && z.beta <= b && z.gamma > c && z.gamma <= d)
        .collect();
    let zero_sum: f64 = inside
        .iter()
        .map(|z| f64::from(z.multiplicity) * (z.beta - a))
        .sum();
    let lhs = 2.0 * PI * zero_sum;
    let rhs = sides.boundary_total();
    let mut rep = Report::new(
        "littlewood",
        json!({ "rect": rect, "which": which, "zeros_inside": inside.len() }),
    );
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = (lhs - rhs).abs();
    rep.pass = rep.residual <= LITTLEWOOD_TOL;
    rep.details = json!({ "sides": sides, "zeros": inside });
    Ok(rep)
}

/// Acceptance tolerance of the Littlewood closure.
pub const LITTLEWOOD_TOL: f64 = 1e-4;

/// Checks |Re (1/2πi) ∫_a^b f′/f| ≤ ½ log(M/|f(a)|) / log(R/|b − a|) where M
/// bounds |f| on the disc |z − a| ≤ R.
pub fn backlund_bound_check(
    which: Which,
    a: Complex64,
    b: Complex64,
    r_disc: f64,
    zeros: &[ZeroRecord],
) -> Result<Report> {
    let dist = (b - a).norm();
    if !(dist > 0.0 && dist < r_disc) {
        return Err(Error::InvalidInput(format!(
            "need 0 < |b − a| = {dist} < R = {r_disc}"
        )));
    }
    // distance from each zero to the segment
    for z in zeros {
        let u = ((z.rho() - a) * (b - a).conj()).re / (dist * dist);
        let p = a + (b - a) * u.clamp(0.0, 1.0);
        if (z.rho() - p).norm() < 1e-6 {
            return Err(Error::BoundaryZero { from: a, to: b });
        }
    }
    let track = ContinuousArg::track(|z| which.eval(z), a, b, None, ArgTrackOptions::default())?;
    let lhs = track.total_change().abs() / (2.0 * PI);
    // maximum principle: the boundary circle suffices
    let samples = 720;
    let mut m = 0.0f64;
    for k in 0..samples {
        let z = a + Complex64::from_polar(r_disc, 2.0 * PI * k as f64 / samples as f64);
        m = m.max(which.eval(z)?.norm());
    }
    let fa = which.eval(a)?.norm();
    let rhs = 0.5 * (m / fa).ln() / (r_disc / dist).ln();
    let mut rep = Report::new(
        "backlund",
        json!({ "which": which, "a": [a.re, a.im], "b": [b.re, b.im], "R": r_disc }),
    );
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = rhs - lhs;
    // the sampled maximum can undershoot the true one slightly
    rep.pass = lhs <= rhs * (1.0 + 1e-6) + 1e-9;
    rep.details = json!({ "max_modulus": m, "abs_f_a": fa, "arg_change": track.total_change() });
    Ok(rep)
}
