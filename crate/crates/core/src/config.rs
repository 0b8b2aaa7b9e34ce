//! Run configuration and the pinned constants of the trend checks.
//!
//! The implied constants of the asymptotic statements are not known, so each
//! check is run once by [`calibrate`], the observed normalized residual is
//! inflated by [`SAFETY_FACTOR`] and the result is stored in a versioned TOML
//! file. Later runs compare against the stored values.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rzeta::{rzeta, rzeta_mainsum};
use crate::verify::{self, DEFAULT_T0, MEAN_T0};
use crate::zeros::ZeroCatalog;
use crate::zeta::{w_factor, DEFAULT_W_C};

/// Format version of the constants file.
pub const CONSTANTS_VERSION: u32 = 1;

/// Multiplier applied to observed residuals when pinning a constant.
pub const SAFETY_FACTOR: f64 = 1.5;

const BUNDLED: &str = include_str!("../data/fitted_constants.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedConstants {
    pub version: u32,
    /// A in |U(s)| ≤ A t^(−1/21).
    pub asymptotic_a: f64,
    /// C in |R(s) − Σ n^(−s)| ≤ C |s/2πe|^(−σ/2).
    pub mainsum_c: f64,
    /// C in |W(s)| ≤ C (|s|/2πe)^((1−σ)/2).
    pub w_c: f64,
    /// C in |∫ log|R(σ+it)| dt| ≤ C 2^(−σ).
    pub thm3_c: f64,
    /// First Littlewood theorem, residual / log T.
    pub kappa1: f64,
    /// Second Littlewood theorem, residual / T^(20/21).
    pub kappa2: f64,
    /// per identity, absolute residual.
    pub kappa3: f64,
    /// Mean of log|e^(πiη)|, residual / T^(3/14).
    pub kappa4: f64,
    /// Mean of log|J|, residual / T^(3/7 + 1/2).
    pub kappa5: f64,
    /// Mean of log|Γ| and of log|F| − log|R|, residual / T^(1/2).
    pub kappa6: f64,
    /// Mean of log|F| on the regime edge, residual / T^(20/21).
    pub kappa7: f64,
    /// ω(T)/2π against N(β ≥ ½, T), residual / log T.
    pub kappa_omega: f64,
}

impl FittedConstants {
    /// The constants shipped with the crate.
    pub fn bundled() -> Self {
        toml::from_str(BUNDLED).expect("bundled constants parse")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let c: FittedConstants = toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
        if c.version != CONSTANTS_VERSION {
            return Err(Error::Config(format!(
                "constants file version {} (expected {CONSTANTS_VERSION})",
                c.version
            )));
        }
        Ok(c)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("constants serialise")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml())?;
        Ok(())
    }
}

/// Settings shared by the command-line front end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Absolute accuracy requested from the quadrature of R.
    pub precision_target: f64,
    pub t0: f64,
    /// Absolute tolerance of line integrals per unit length.
    pub quad_tol: f64,
    /// Fitted constants file; the bundled constants are used when absent.
    pub constants_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    /// Worker threads, 0 meaning one per core.
    pub threads: usize,
    /// Directory of the zero catalog.
    pub catalog_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_target: 1e-13,
            t0: DEFAULT_T0,
            quad_tol: 1e-6,
            constants_path: None,
            out_dir: PathBuf::from("out"),
            threads: 0,
            catalog_dir: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let c: RunConfig = toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.precision_target > 0.0 && self.quad_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if !(self.t0 >= 1.0) {
            return Err(Error::Config(format!("t0 = {} < 1", self.t0)));
        }
        Ok(())
    }

    pub fn constants(&self) -> Result<FittedConstants> {
        match &self.constants_path {
            Some(p) => FittedConstants::load(p),
            None => Ok(FittedConstants::bundled()),
        }
    }

    /// Catalog directory, defaulting to `<out_dir>/catalog`.
    pub fn catalog_dir(&self) -> PathBuf {
        self.catalog_dir
            .clone()
            .unwrap_or_else(|| self.out_dir.join("catalog"))
    }
}

/// Observed values behind each calibrated constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub constants: FittedConstants,
    pub observed: BTreeMap<String, f64>,
}

/// Rounds `x · SAFETY_FACTOR` up to two significant digits.
pub fn pin(x: f64) -> f64 {
    let y = x * SAFETY_FACTOR;
    if y <= 0.0 {
        return 0.01;
    }
    let p = 10f64.powi(1 - y.log10().floor() as i32);
    (y * p).ceil() / p
}

/// Heights of the left-asymptotic check: ten equally spaced points on [100, 400].
pub fn asymptotic_heights() -> Vec<f64> {
    (0..10).map(|k| 100.0 + 300.0 * k as f64 / 9.0).collect()
}

/// T grid of the theorem checks: 101, 126, …, 401 clipped to `t_max`.
pub fn theorem_grid(t_max: f64) -> Vec<f64> {
    let mut g: Vec<f64> = (0..)
        .map(|k| DEFAULT_T0 + 25.0 * k as f64)
        .take_while(|t| *t <= t_max)
        .collect();
    if g.last() != Some(&t_max) {
        g.push(t_max);
    }
    g
}

/// T grid of the per identity: 50, 100, …, 500.
pub fn per_grid() -> Vec<f64> {
    (1..=10).map(|k| 50.0 * k as f64).collect()
}

fn mainsum_observed() -> Result<f64> {
    let mut worst = 0.0f64;
    for sigma in [0.5, 1.0, 2.0, 4.0] {
        for k in 0..8 {
            let s = Complex64::new(sigma, 60.0 + 50.0 * k as f64);
            let approx = rzeta_mainsum(s, 1.0)?;
            worst = worst.max((approx.value - rzeta(s)?).norm() / approx.claimed_abs_error);
        }
    }
    Ok(worst)
}

fn w_observed() -> Result<f64> {
    let mut worst = 0.0f64;
    for sigma in [2.0, 3.0, 4.0, 6.0] {
        for k in 0..8 {
            let s = Complex64::new(sigma, 50.0 + 50.0 * k as f64);
            if s.norm() <= 2.0 * PI * E * E {
                continue;
            }
            let w = w_factor(s, DEFAULT_W_C)?;
            worst = worst.max(w.value.norm() / (w.claimed_abs_error / DEFAULT_W_C));
        }
    }
    Ok(worst)
}

/// Runs every trend check with an unbounded constant and pins the results.
/// `catalog` must reach T = 400.
pub fn calibrate(catalog: &ZeroCatalog) -> Result<Calibration> {
    catalog.check_frontier(400.0)?;
    let inf = f64::INFINITY;
    let mut obs = BTreeMap::new();
    let grid300 = theorem_grid(300.0);
    let grid400 = theorem_grid(400.0);

    let a = verify::left_asymptotic_check(&asymptotic_heights(), inf)?;
    obs.insert("asymptotic_a".to_string(), a.lhs);
    obs.insert("mainsum_c".to_string(), mainsum_observed()?);
    obs.insert("w_c".to_string(), w_observed()?);
    let c = verify::thm3_check(&[4.0, 5.0, 6.0, 7.0], 300.0, DEFAULT_T0, inf)?;
    obs.insert("thm3_c".to_string(), c.lhs);

    let mut k1 = 0.0f64;
    for sigma in [1.0, 0.5] {
        k1 = k1.max(verify::thm1_check(sigma, &grid300, catalog, DEFAULT_T0, inf)?.residual);
    }
    obs.insert("kappa1".to_string(), k1);
    let k2 = verify::thm2_check(4.0, &grid300, catalog, DEFAULT_T0, inf)?
        .residual
        .max(verify::thm2_count_difference(&grid400, catalog, DEFAULT_T0, inf)?.residual);
    obs.insert("kappa2".to_string(), k2);
    obs.insert(
        "kappa3".to_string(),
        verify::per_integral_check(&per_grid(), MEAN_T0, inf)?.residual,
    );
    let mut k4 = 0.0f64;
    let mut k5 = 0.0f64;
    for t in [100.0, 200.0, 400.0] {
        k4 = k4.max(verify::littlemean_check(t, MEAN_T0, inf)?.residual);
        k5 = k5.max(verify::mean_j_check(t, MEAN_T0, inf)?.residual);
    }
    obs.insert("kappa4".to_string(), k4);
    obs.insert("kappa5".to_string(), k5);

    let f4 = verify::log_f_decomposition_check(4.0, 300.0, MEAN_T0, &catalog.records, inf, inf)?;
    let sigma0 = 1.0 - 300f64.powf(3.0 / 7.0);
    let fe = verify::log_f_decomposition_check(sigma0, 300.0, MEAN_T0, &catalog.records, inf, inf)?;
    let g = verify::gamma_asymptotic_check(-10.0, 200.0, MEAN_T0, inf)?;
    let detail = |r: &verify::Report, k: &str| r.details[k].as_f64().unwrap_or(0.0);
    let k6 = [
        detail(&f4, "remainder_normalized"),
        detail(&f4, "gamma_normalized"),
        detail(&fe, "remainder_normalized"),
        detail(&fe, "gamma_normalized"),
        g.residual,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    obs.insert("kappa6".to_string(), k6);
    obs.insert("kappa7".to_string(), detail(&fe, "edge_normalized"));
    let om = verify::omega_count_check(catalog, &[50.0, 100.0, 200.0, 300.0, 400.0], inf)?;
    obs.insert("kappa_omega".to_string(), om.residual);

    let get = |k: &str| pin(obs[k]);
    let constants = FittedConstants {
        version: CONSTANTS_VERSION,
        asymptotic_a: get("asymptotic_a"),
        mainsum_c: get("mainsum_c"),
        w_c: get("w_c"),
        thm3_c: get("thm3_c"),
        kappa1: get("kappa1"),
        kappa2: get("kappa2"),
        kappa3: get("kappa3"),
        kappa4: get("kappa4"),
        kappa5: get("kappa5"),
        kappa6: get("kappa6"),
        kappa7: get("kappa7"),
        kappa_omega: get("kappa_omega"),
    };
    Ok(Calibration {
        constants,
        observed: obs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pin_rounds_up() {
        assert_eq!(pin(1.0), 1.5);
        assert!((pin(0.2496) - 0.38).abs() < 1e-12);
        assert!(pin(123.0) >= 184.5 && pin(123.0) <= 190.0);
    }

    #[test]
    fn bundled_round_trip() {
        let c = FittedConstants::bundled();
        assert_eq!(c.version, CONSTANTS_VERSION);
        let back: FittedConstants = toml::from_str(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn grids() {
        assert_eq!(theorem_grid(300.0).first(), Some(&101.0));
        assert_eq!(theorem_grid(300.0).last(), Some(&300.0));
        assert_eq!(asymptotic_heights().len(), 10);
        assert!(RunConfig::default().validate().is_ok());
    }
}
