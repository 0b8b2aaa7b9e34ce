//! Complex Gamma machinery, the functional-equation factor χ(s), the
//! Riemann–Siegel phase θ(t), the periodic Bernoulli polynomial B̃₃ and the
//! periodic series `per`, plus continuous argument tracking along segments.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_741_780_329_736_405_6;

// B_{2k} / (2k (2k-1)) for k = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series
}

/// Principal branch of log Γ(z).
///
/// Stirling series after shifting `z` right until `Re z >= 10`; the shift is
/// undone with principal logarithms, which reproduces the branch that is
/// continuous off the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("log_gamma of non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 10.0 {
        return Ok(stirling(z));
    }
    let n = (10.0 - z.re).ceil() as usize;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    Ok(stirling(z + n as f64) - shift)
}

/// True when `z` is a pole of Γ.
fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

/// χ(s) = π^(s-1/2) Γ((1-s)/2) / Γ(s/2), so that ζ(s) = χ(s) ζ(1-s).
pub fn chi(s: Complex64) -> Result<Complex64> {
    let num = (Complex64::new(1.0, 0.0) - s) * 0.5;
    if is_gamma_pole(num) {
        return Err(Error::ChiPole(s));
    }
    let den = s * 0.5;
    if is_gamma_pole(den) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_pi = PI.ln();
    let log = (s - 0.5) * ln_pi + log_gamma(num)? - log_gamma(den)?;
    Ok(log.exp())
}

/// Riemann–Siegel theta, θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn theta(t: f64) -> f64 {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    lg.im - 0.5 * t * PI.ln()
}

/// Truncation of the `per` Fourier series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerSeries {
    truncation_n: u64,
    tail_bound: f64,
}

impl PerSeries {
    pub fn new(truncation_n: u64) -> Result<Self> {
        if truncation_n == 0 {
            return Err(Error::InvalidInput("per truncation must be >= 1".into()));
        }
        // both tails are dominated by sum_{n>N} 1/n^2 <= 1/N, with coefficients 2 and 1
        Ok(PerSeries {
            truncation_n,
            tail_bound: 3.0 / truncation_n as f64,
        })
    }

    pub fn truncation_n(&self) -> u64 {
        self.truncation_n
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }
}

impl Default for PerSeries {
    fn default() -> Self {
        PerSeries::new(100_000).expect("nonzero")
    }
}

/// per(x) = Σ 2 sin(2πnx)/n² − Σ (−1)ⁿ sin(4πnx)/n², truncated at `series`.
///
/// The argument is reduced to [0, 1) before summation, so `per(x + k)` and
/// `per(x)` agree bit for bit whenever `x + k` is exact.
pub fn per(x: f64, series: PerSeries) -> f64 {
    let y = x - x.floor();
    let mut first = 0.0;
    let mut second = 0.0;
    for n in 1..=series.truncation_n {
        let nf = n as f64;
        let inv2 = 1.0 / (nf * nf);
        let phase = (nf * y).fract();
        first += sin_two_pi(phase) * inv2;
        let phase2 = (2.0 * nf * y).fract();
        let term = sin_two_pi(phase2) * inv2;
        if n % 2 == 0 {
            second += term;
        } else {
            second -= term;
        }
    }
    2.0 * first - second
}

/// sin(2πp) for p in [0, 1), exact at multiples of 1/4.
fn sin_two_pi(p: f64) -> f64 {
    let x = 2.0 * p;
    let (x, sign) = if x > 1.0 { (x - 1.0, -1.0) } else { (x, 1.0) };
    sign * (PI * x.min(1.0 - x)).sin()
}

/// B̃₃(x): the Bernoulli polynomial x(x − 1/2)(x − 1) extended with period 1.
pub fn bernoulli3_periodic(x: f64) -> f64 {
    let y = x - x.floor();
    y * (y - 0.5) * (y - 1.0)
}

/// Bound on |∫ f B̃_{2n+1}| for monotone nonnegative f:
/// (−1)ⁿ·3·(1 − 2^−(2n+2))·B_{2n+2}/(n+1)·max(f(a), f(b)).
pub fn odd_bernoulli_integral_bound(n: u32, f_endpoints: (f64, f64)) -> Result<f64> {
    let b_even = match n {
        1 => -1.0 / 30.0,
        2 => 1.0 / 42.0,
        3 => -1.0 / 30.0,
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    let (fa, fb) = f_endpoints;
    if fa < 0.0 || fb < 0.0 {
        return Err(Error::InvalidInput(
            "endpoint values must be nonnegative".into(),
        ));
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let k = 2 * n + 2;
    let c = sign * 3.0 * (1.0 - 0.5f64.powi(k as i32)) * b_even / f64::from(n + 1);
    Ok(c * fa.max(fb))
}

/// One tracked point of a continuous argument.
#[derive(Debug, Clone, Copy)]
pub struct ArgSample {
    /// Position along the segment, in [0, 1].
    pub param: f64,
    pub point: Complex64,
    pub value: Complex64,
    pub arg: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ArgTrackOptions {
    /// Largest step along the segment, in units of |z|.
    pub max_step: f64,
    /// Steps shorter than this mean a zero sits on the path.
    pub min_step: f64,
    /// Largest accepted argument change between neighbouring samples.
    pub max_turn: f64,
    /// Largest accepted |log|f|| change between neighbouring samples.
    pub max_log_ratio: f64,
}

impl Default for ArgTrackOptions {
    fn default() -> Self {
        ArgTrackOptions {
            max_step: 0.25,
            min_step: 1e-7,
            max_turn: FRAC_PI_4,
            max_log_ratio: 1.5,
        }
    }
}

/// A continuous determination of arg f along a segment.
#[derive(Debug, Clone)]
pub struct ContinuousArg {
    pub base_point: Complex64,
    pub base_value: f64,
    pub path: Vec<ArgSample>,
}

impl ContinuousArg {
    /// Tracks arg f from `from` to `to`. The argument at `from` is `base`, or
    /// the principal argument when `base` is `None`.
    pub fn track<F>(
        f: F,
        from: Complex64,
        to: Complex64,
        base: Option<f64>,
        opts: ArgTrackOptions,
    ) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let len = (to - from).norm();
        let at = |tau: f64| from + (to - from) * tau;
        let eval = |tau: f64| -> Result<Complex64> {
            let z = at(tau);
            let v = f(z)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite value at {z}")));
            }
            if v.norm() == 0.0 {
                return Err(Error::BoundaryZero { from, to });
            }
            Ok(v)
        };
        let v0 = eval(0.0)?;
        let a0 = base.unwrap_or_else(|| v0.arg());
        let mut path = vec![ArgSample {
            param: 0.0,
            point: from,
            value: v0,
            arg: a0,
        }];
        if len == 0.0 {
            return Ok(ContinuousArg {
                base_point: from,
                base_value: a0,
                path,
            });
        }
        let max_h = (opts.max_step / len).min(1.0);
        let min_h = opts.min_step / len;
        let mut h = max_h.min(1.0 / 16.0);
        let mut tau = 0.0;
        let mut cur = v0;
        let mut arg = a0;
        while tau < 1.0 {
            let mut t2 = (tau + h).min(1.0);
            let mut f2 = eval(t2)?;
            loop {
                let tm = 0.5 * (tau + t2);
                let fm = eval(tm)?;
                let d1 = (fm / cur).arg();
                let d2 = (f2 / fm).arg();
                // the modulus test keeps a step from jumping over a near zero,
                // where the argument could wrap by a multiple of 2π unseen
                let g1 = (fm.norm() / cur.norm()).ln().abs();
                let g2 = (f2.norm() / fm.norm()).ln().abs();
                if d1.abs() < opts.max_turn
                    && d2.abs() < opts.max_turn
                    && g1 < opts.max_log_ratio
                    && g2 < opts.max_log_ratio
                {
                    path.push(ArgSample {
                        param: tm,
                        point: at(tm),
                        value: fm,
                        arg: arg + d1,
                    });
                    arg += d1 + d2;
                    path.push(ArgSample {
                        param: t2,
                        point: at(t2),
                        value: f2,
                        arg,
                    });
                    h = ((t2 - tau) * 1.5).min(max_h);
                    tau = t2;
                    cur = f2;
                    break;
                }
                if (t2 - tau) < min_h {
                    return Err(Error::BoundaryZero {
                        from: at(tau),
                        to: at(t2),
                    });
                }
                t2 = tm;
                f2 = fm;
            }
        }
        Ok(ContinuousArg {
            base_point: from,
            base_value: a0,
            path,
        })
    }

    pub fn end_arg(&self) -> f64 {
        self.path.last().map(|s| s.arg).unwrap_or(self.base_value)
    }

    pub fn end_value(&self) -> Complex64 {
        self.path.last().expect("path has the base sample").value
    }

    pub fn total_change(&self) -> f64 {
        self.end_arg() - self.base_value
    }

    /// The continued argument at `point`, which must lie on the segment at
    /// position `param`.
    pub fn arg_at(&self, value_at_point: Complex64, param: f64) -> f64 {
        let idx = match self.path.binary_search_by(|s| s.param.total_cmp(&param)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => {
                // pick the nearer of the two neighbours
                let lo = &self.path[i - 1];
                match self.path.get(i) {
                    Some(hi) if hi.param - param < param - lo.param => i,
                    _ => i - 1,
                }
            }
        };
        let s = &self.path[idx];
        s.arg + (value_at_point / s.value).arg()
    }
}
