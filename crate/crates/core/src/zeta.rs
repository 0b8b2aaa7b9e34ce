//! ζ(s) by Euler–Maclaurin summation, Hardy's Z(t), the comparison factor
//! W(s) = R(s)/ζ(s) − 1 and the phase ω(t) of R on the critical line.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rzeta::{rzeta, ApproxWithError};
use crate::special::{chi, theta, ArgTrackOptions, ContinuousArg};

// B_{2k} / (2k)! for k = 1..=6
const EM_COEFF: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// Euler–Maclaurin ζ(s) with `n_terms` terms of the Dirichlet series and
/// corrections through B₁₂.
pub fn zeta_em(s: Complex64, n_terms: usize) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::ZetaPole);
    }
    if n_terms < 10 {
        return Err(Error::InvalidInput(format!("n_terms = {n_terms} < 10")));
    }
    let n = n_terms as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    // small terms first
    for k in (1..n_terms).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * n.ln()).exp();
    sum += n_s * n / (s - 1.0) + n_s * 0.5;
    // B_{2k}/(2k)! s(s+1)…(s+2k−2) N^{−s−2k+1}
    let mut rising = s;
    let mut pow = n_s / n;
    for (k, c) in EM_COEFF.iter().enumerate() {
        sum += rising * pow * *c;
        let j = 2 * k as u32 + 1;
        rising *= (s + f64::from(j)) * (s + f64::from(j + 1));
        pow /= n * n;
    }
    Ok(sum)
}

/// Default Euler–Maclaurin length max(50, 2|t|).
pub fn default_terms(s: Complex64) -> usize {
    (2.0 * s.im.abs()).ceil().max(50.0) as usize
}

/// ζ(s) with the default number of terms. For σ < 0 the functional
/// equation is used: the Euler–Maclaurin sum there cancels terms of size
/// N^(−σ) and loses digits.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s.re < 0.0 {
        let one_minus = Complex64::new(1.0, 0.0) - s;
        return Ok(chi(s)? * zeta_em(one_minus, default_terms(one_minus))?);
    }
    zeta_em(s, default_terms(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZValue {
    pub t: f64,
    /// Re(e^(iθ(t)) ζ(½+it)).
    pub z: f64,
    /// The imaginary part that should vanish.
    pub imag_residue: f64,
    /// 2 Re(e^(iθ(t)) R(½+it)).
    pub via_r: f64,
}

/// Hardy's Z(t) together with its two consistency checks.
pub fn z_function_detailed(t: f64) -> Result<ZValue> {
    if !(t > 0.0 && t <= 500.0) {
        return Err(Error::regime(
            "z_function",
            Complex64::new(0.5, t),
            "requires 0 < t <= 500",
        ));
    }
    let s = Complex64::new(0.5, t);
    let rot = Complex64::from_polar(1.0, theta(t));
    let w = rot * zeta(s)?;
    let via_r = 2.0 * (rot * rzeta(s)?).re;
    Ok(ZValue {
        t,
        z: w.re,
        imag_residue: w.im,
        via_r,
    })
}

pub fn z_function(t: f64) -> Result<f64> {
    z_function_detailed(t).map(|v| v.z)
}

/// Default constant C in |W(s)| ≤ C (|s|/2πe)^((1−σ)/2).
pub const DEFAULT_W_C: f64 = 2.0;

/// W(s) = R(s)/ζ(s) − 1 with the bound C (|s|/2πe)^((1−σ)/2).
pub fn w_factor(s: Complex64, c: f64) -> Result<ApproxWithError> {
    if !(s.re >= 2.0 && s.im >= 0.0) {
        return Err(Error::regime("w_factor", s, "requires σ >= 2, t >= 0"));
    }
    if s.norm() <= 2.0 * PI * E * E {
        return Err(Error::regime("w_factor", s, "requires |s| > 2πe²"));
    }
    let value = rzeta(s)? / zeta(s)? - 1.0;
    let bound = w_bound(s, c);
    Ok(ApproxWithError {
        value,
        claimed_abs_error: bound,
        claimed_rel_error: bound,
    })
}

pub fn w_bound(s: Complex64, c: f64) -> f64 {
    c * (s.norm() / (2.0 * PI * E)).powf(0.5 * (1.0 - s.re))
}

/// ω and g with R(½+it) = e^(−iω(t)) g(t) on a grid, ω continuous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrack {
    pub t_grid: Vec<f64>,
    pub omega_values: Vec<f64>,
    pub g_values: Vec<f64>,
    /// Grid points moved by half a step because R vanished there.
    pub perturbed: Vec<f64>,
}

impl PhaseTrack {
    /// ω(T)/2π, with ω linearly interpolated between samples.
    pub fn count_estimate(&self, t: f64) -> Result<f64> {
        Ok(self.omega_at(t)? / (2.0 * PI))
    }

    pub fn omega_at(&self, t: f64) -> Result<f64> {
        let g = &self.t_grid;
        if g.is_empty() || t < g[0] || t > *g.last().unwrap() {
            return Err(Error::InvalidInput(format!(
                "t = {t} outside the phase track"
            )));
        }
        let i = g.partition_point(|x| *x < t);
        if i == 0 || g[i] == t {
            return Ok(self.omega_values[i]);
        }
        let w = (t - g[i - 1]) / (g[i] - g[i - 1]);
        Ok(self.omega_values[i - 1] * (1.0 - w) + self.omega_values[i] * w)
    }

    /// Number of zeros of cos(θ(t) − ω(t)) on the track, counted as crossings
    /// of the levels π/2 + kπ between consecutive samples.
    pub fn cos_phase_zeros(&self, t_lo: f64, t_hi: f64) -> usize {
        let phase = |i: usize| theta(self.t_grid[i]) - self.omega_values[i];
        let level = |p: f64| ((p - 0.5 * PI) / PI).floor() as i64;
        let mut count = 0;
        for i in 1..self.t_grid.len() {
            if self.t_grid[i - 1] < t_lo || self.t_grid[i] > t_hi {
                continue;
            }
            count += (level(phase(i)) - level(phase(i - 1))).unsigned_abs() as usize;
        }
        count
    }
}

/// Tracks ω on t₀, t₀ + step, … up to `t_max`, ω(t₀) = −arg R(½+it₀).
pub fn omega_g(t0: f64, t_max: f64, step: f64) -> Result<PhaseTrack> {
    if !(step > 0.0 && t0 < t_max) {
        return Err(Error::InvalidInput(format!(
            "bad phase grid {t0}..{t_max} step {step}"
        )));
    }
    let n = ((t_max - t0) / step).ceil() as usize;
    let mut track = PhaseTrack {
        t_grid: Vec::with_capacity(n + 1),
        omega_values: Vec::with_capacity(n + 1),
        g_values: Vec::with_capacity(n + 1),
        perturbed: Vec::new(),
    };
    let f = |z: Complex64| rzeta(z);
    let mut prev_t = t0;
    let mut prev_arg = None;
    for i in 0..=n {
        let mut t = (t0 + step * i as f64).min(t_max);
        if i > 0 && t <= prev_t {
            break;
        }
        let mut v = rzeta(Complex64::new(0.5, t))?;
        if v.norm() == 0.0 {
            t += 0.5 * step;
            track.perturbed.push(t);
            v = rzeta(Complex64::new(0.5, t))?;
        }
        let arg = match prev_arg {
            None => v.arg(),
            Some(a) => ContinuousArg::track(
                f,
                Complex64::new(0.5, prev_t),
                Complex64::new(0.5, t),
                Some(a),
                ArgTrackOptions::default(),
            )?
            .end_arg(),
        };
        track.t_grid.push(t);
        track.omega_values.push(-arg);
        track.g_values.push(v.norm());
        prev_t = t;
        prev_arg = Some(arg);
    }
    Ok(track)
}

/// Sign changes of Z(t) between consecutive grid points in (t_lo, t_hi].
pub fn z_sign_changes(t_lo: f64, t_hi: f64, step: f64) -> Result<usize> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let mut prev = z_function(t_lo)?;
    let mut count = 0;
    for i in 1..=n {
        let t = (t_lo + step * i as f64).min(t_hi);
        let z = z_function(t)?;
        if z != 0.0 && prev != 0.0 && (z > 0.0) != (prev > 0.0) {
            count += 1;
        }
        if z != 0.0 {
            prev = z;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_trivial_values() {
        let z2 = zeta_em(c(2.0, 0.0), 50).unwrap();
        assert!((z2 - PI * PI / 6.0).norm() < 1e-12);
        let z0 = zeta_em(c(0.0, 0.0), 50).unwrap();
        assert!((z0 + 0.5).norm() < 1e-12);
        assert!(matches!(zeta_em(c(1.0, 0.0), 50), Err(Error::ZetaPole)));
    }

    #[test]
    fn zeta_high_precision_values() {
        // 90-digit oracle values
        let z = zeta(c(-2.0, 200.0)).unwrap();
        let want = c(2780.3037510479034656, -6113.0904724473102087);
        assert!((z - want).norm() < 1e-12 * want.norm());
        let z = zeta(c(3.0, 50.0)).unwrap();
        let want = c(0.88575317457178229446, 0.048491476392560985596);
        assert!((z - want).norm() < 1e-13);
        assert!(zeta(c(0.5, 14.134725)).unwrap().norm() < 1e-5);
    }

    #[test]
    fn z_is_real_and_matches_r() {
        let v = z_function_detailed(25.0).unwrap();
        assert!(v.imag_residue.abs() < 1e-10);
        assert!((v.z - v.via_r).abs() < 1e-9);
        assert!(z_function(14.1).unwrap() * z_function(14.2).unwrap() < 0.0);
        let s = c(0.5, 50.0);
        assert!((z_function(50.0).unwrap().abs() - zeta(s).unwrap().norm()).abs() < 1e-12);
    }

    #[test]
    fn w_decays_in_sigma() {
        let w = w_factor(c(12.0, 100.0), DEFAULT_W_C).unwrap();
        assert!(w.value.norm() < 1e-4);
        let b: Vec<f64> = [2.0, 4.0, 6.0, 8.0]
            .iter()
            .map(|&x| w_bound(c(x, 150.0), 1.0))
            .collect();
        assert!(b.windows(2).all(|p| p[1] < p[0]));
        assert!(w_factor(c(1.0, 100.0), 1.0).is_err());
    }
}
