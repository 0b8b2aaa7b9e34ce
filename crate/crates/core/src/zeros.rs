//! Zeros of R(s) in the upper half-plane: argument-principle counts over
//! rectangles, Newton refinement, catalog scans and the counting statistics
//! built on a catalog.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rzeta::{bigF, rzeta, QUADRATURE_T_MAX};
use crate::special::{ArgTrackOptions, ContinuousArg};

/// Function whose zeros are counted. F = sπ^(−s/2)Γ(s/2)R has the same zeros
/// as R in t > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    R,
    F,
}

impl Which {
    pub fn eval(self, s: Complex64) -> Result<Complex64> {
        match self {
            Which::R => rzeta(s),
            Which::F => bigF(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleRegion {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl RectangleRegion {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let r = RectangleRegion {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        };
        if !(sigma_min < sigma_max && 0.0 < t_min && t_min < t_max) {
            return Err(Error::InvalidInput(format!("degenerate rectangle {r}")));
        }
        Ok(r)
    }

    /// A plotting window, which unlike a scan rectangle may reach below the
    /// real axis.
    pub fn window(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let r = RectangleRegion {
            sigma_min,
            sigma_max,
            t_min,
            t_max,
        };
        if !(sigma_min < sigma_max
            && t_min < t_max
            && r.width().is_finite()
            && r.height().is_finite())
        {
            return Err(Error::InvalidInput(format!("degenerate window {r}")));
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.sigma_max - self.sigma_min
    }

    pub fn height(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_min + self.sigma_max),
            0.5 * (self.t_min + self.t_max),
        )
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.sigma_min && z.re <= self.sigma_max && z.im >= self.t_min && z.im <= self.t_max
    }

    /// Corners in counterclockwise order starting at the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_min, self.t_min),
            Complex64::new(self.sigma_max, self.t_min),
            Complex64::new(self.sigma_max, self.t_max),
            Complex64::new(self.sigma_min, self.t_max),
        ]
    }

    fn grown(&self, d: f64) -> Self {
        RectangleRegion {
            sigma_min: self.sigma_min - d,
            sigma_max: self.sigma_max + d,
            t_min: (self.t_min - d).max(0.5 * self.t_min),
            t_max: self.t_max + d,
        }
    }

    /// Splits at σ = `at` (vertical line) or t = `at` (horizontal line).
    pub fn split(&self, vertical: bool, at: f64) -> (Self, Self) {
        if vertical {
            (
                RectangleRegion {
                    sigma_max: at,
                    ..*self
                },
                RectangleRegion {
                    sigma_min: at,
                    ..*self
                },
            )
        } else {
            (
                RectangleRegion { t_max: at, ..*self },
                RectangleRegion { t_min: at, ..*self },
            )
        }
    }
}

impl std::fmt::Display for RectangleRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}]x[{}, {}]",
            self.sigma_min, self.sigma_max, self.t_min, self.t_max
        )
    }
}

/// Change of a continuous argument of `which` along the segment, with the
/// segment cut into pieces of length at most `piece` tracked in parallel.
pub fn arg_change(which: Which, from: Complex64, to: Complex64, piece: f64) -> Result<f64> {
    let len = (to - from).norm();
    let n = ((len / piece).ceil() as usize).max(1);
    let f = move |z: Complex64| which.eval(z);
    let parts: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = from + (to - from) * (k as f64 / n as f64);
            let b = from + (to - from) * ((k + 1) as f64 / n as f64);
            ContinuousArg::track(f, a, b, None, ArgTrackOptions::default())
                .map(|c| c.total_change())
        })
        .collect();
    let mut total = 0.0;
    for p in parts {
        total += p?;
    }
    Ok(total)
}

/// Winding number of `which` around the boundary of `rect`, without
/// perturbation.
fn winding_exact(rect: &RectangleRegion, which: Which) -> Result<i64> {
    let c = rect.corners();
    let mut total = 0.0;
    for k in 0..4 {
        total += arg_change(which, c[k], c[(k + 1) % 4], 4.0)?;
    }
    let w = total / (2.0 * PI);
    let n = w.round();
    if (w - n).abs() > 0.1 {
        return Err(Error::InvalidInput(format!(
            "argument change {total} around {rect} is not a multiple of 2π"
        )));
    }
    Ok(n as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub count: i64,
    /// The rectangle actually integrated over, after any perturbation.
    pub rect: RectangleRegion,
    pub perturbations: u32,
}

/// Perturbation applied to a boundary that passes through a zero.
pub const BOUNDARY_PERTURBATION: f64 = 1e-4;

/// Number of zeros (with multiplicity) inside `rect`. A boundary that passes
/// through a zero is pushed outward by 1e−4 and retried, up to three times.
pub fn winding_count(rect: &RectangleRegion, which: Which) -> Result<Winding> {
    let mut last = None;
    for k in 0..4u32 {
        let r = rect.grown(BOUNDARY_PERTURBATION * f64::from(k));
        match winding_exact(&r, which) {
            Ok(count) => {
                return Ok(Winding {
                    count,
                    rect: r,
                    perturbations: k,
                })
            }
            Err(e @ Error::BoundaryZero { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub beta: f64,
    pub gamma: f64,
    pub multiplicity: u32,
    pub residual: f64,
    pub source_rect: RectangleRegion,
}

impl ZeroRecord {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(self.beta, self.gamma)
    }
}

/// max |f| on the circle of radius 0.1 around `z`.
pub fn local_scale(which: Which, z: Complex64) -> Result<f64> {
    let mut m = 0.0f64;
    for k in 0..16 {
        let w = z + Complex64::from_polar(0.1, 2.0 * PI * f64::from(k) / 16.0);
        m = m.max(which.eval(w)?.norm());
    }
    Ok(m)
}

/// Residual tolerance relative to the local scale.
pub const RESIDUAL_TOL: f64 = 1e-9;

const NEWTON_H: f64 = 1e-6;
const NEWTON_MAX_ITER: usize = 50;

fn square(z: Complex64, r: f64) -> RectangleRegion {
    RectangleRegion {
        sigma_min: z.re - r,
        sigma_max: z.re + r,
        t_min: z.im - r,
        t_max: z.im + r,
    }
}

fn newton(which: Which, seed: Complex64) -> Result<(Complex64, Vec<Complex64>)> {
    let mut z = seed;
    let mut trace = vec![z];
    let fail = |reason: &str, trace: Vec<Complex64>| Error::RefinementFailed {
        seed,
        reason: reason.to_string(),
        trace,
    };
    for _ in 0..NEWTON_MAX_ITER {
        let f = which.eval(z)?;
        if f.norm() == 0.0 {
            return Ok((z, trace));
        }
        let h = Complex64::new(NEWTON_H, 0.0);
        let d = (which.eval(z + h)? - which.eval(z - h)?) / (2.0 * NEWTON_H);
        if d.norm() == 0.0 || !d.re.is_finite() {
            return Err(fail("vanishing derivative", trace));
        }
        let step = f / d;
        z -= step;
        trace.push(z);
        if (z - seed).norm() > 1.0 {
            return Err(fail("iterate left the seed neighbourhood", trace));
        }
        if step.norm() <= 1e-14 * z.norm().max(1.0) {
            return Ok((z, trace));
        }
    }
    let f = which.eval(z)?;
    if f.norm() <= RESIDUAL_TOL * local_scale(which, z)? {
        return Ok((z, trace));
    }
    Err(fail("no convergence in 50 iterations", trace))
}

/// Newton refinement of a zero near `seed`.
///
/// The seed must have a zero within the square of half-side 0.05 around it;
/// multiplicity is the winding count of a half-side 1e−4 square around the
/// result.
pub fn refine_zero(seed: Complex64, which: Which) -> Result<ZeroRecord> {
    let around = square(seed, 0.05);
    let w = winding_count(&around, which)?;
    if w.count < 1 {
        return Err(Error::RefinementFailed {
            seed,
            reason: "no zero within 0.05 of the seed".into(),
            trace: vec![seed],
        });
    }
    finish_refinement(seed, which, around)
}

fn finish_refinement(seed: Complex64, which: Which, source: RectangleRegion) -> Result<ZeroRecord> {
    let (z, trace) = newton(which, seed)?;
    let value = which.eval(z)?;
    let scale = local_scale(which, z)?;
    if value.norm() > RESIDUAL_TOL * scale {
        return Err(Error::RefinementFailed {
            seed,
            reason: format!("residual {:e} above tolerance", value.norm() / scale),
            trace,
        });
    }
    let mult = winding_count(&square(z, 1e-4), which)?.count;
    if mult < 1 {
        return Err(Error::RefinementFailed {
            seed,
            reason: "no zero inside the final box".into(),
            trace,
        });
    }
    Ok(ZeroRecord {
        beta: z.re,
        gamma: z.im,
        multiplicity: mult as u32,
        residual: value.norm(),
        source_rect: source,
    })
}

/// Position of a split line, nudged off the midpoint by a fixed irrational
/// fraction so that split lines avoid round coordinates.
fn split_at(lo: f64, hi: f64, attempt: u32) -> f64 {
    let frac = 0.5
        + 0.0137 * (1.0 + f64::from(attempt)) * if attempt.is_multiple_of(2) { 1.0 } else { -1.0 };
    lo + frac * (hi - lo)
}

fn split_cell(
    rect: &RectangleRegion,
    which: Which,
    attempt: u32,
) -> Result<(RectangleRegion, RectangleRegion, i64)> {
    // split the longer side, with σ counted at half weight since cells are wide
    let vertical = rect.width() * 0.5 > rect.height();
    let at = if vertical {
        split_at(rect.sigma_min, rect.sigma_max, attempt)
    } else {
        split_at(rect.t_min, rect.t_max, attempt)
    };
    let (a, b) = rect.split(vertical, at);
    let wa = winding_exact(&a, which)?;
    Ok((a, b, wa))
}

/// Cell side below which a winding count above one is taken as a multiple zero.
const MULTIPLE_ZERO_SIDE: f64 = 1e-6;
/// Cells containing one zero are shrunk to this size before Newton starts.
const ISOLATION_SIDE: f64 = 0.1;

fn isolate(
    rect: RectangleRegion,
    count: i64,
    which: Which,
    out: &mut Vec<ZeroRecord>,
) -> Result<()> {
    if count <= 0 {
        return Ok(());
    }
    let size = rect.width().max(rect.height());
    if count == 1 && size <= ISOLATION_SIDE {
        let rec = finish_refinement(rect.center(), which, rect)?;
        if !rect.grown(1e-6).contains(rec.rho()) {
            return Err(Error::RefinementFailed {
                seed: rect.center(),
                reason: format!(
                    "converged to {} outside the isolating cell {rect}",
                    rec.rho()
                ),
                trace: vec![rec.rho()],
            });
        }
        out.push(rec);
        return Ok(());
    }
    if count > 1 && size <= MULTIPLE_ZERO_SIDE {
        let mut rec = finish_refinement(rect.center(), which, rect)?;
        rec.multiplicity = count as u32;
        out.push(rec);
        return Ok(());
    }
    let mut attempt = 0;
    let (a, b, wa) = loop {
        match split_cell(&rect, which, attempt) {
            Ok(v) => break v,
            Err(Error::BoundaryZero { .. }) if attempt < 6 => attempt += 1,
            Err(e) => return Err(e),
        }
    };
    let wb = count - wa;
    if wa < 0 || wb < 0 {
        return Err(Error::InvalidInput(format!(
            "inconsistent winding split of {rect}: {wa} + {wb} != {count}"
        )));
    }
    isolate(a, wa, which, out)?;
    isolate(b, wb, which, out)
}

/// All zeros inside `rect`, found by recursive bisection.
pub fn zeros_in(rect: &RectangleRegion, which: Which) -> Result<(Vec<ZeroRecord>, Winding)> {
    let w = winding_count(rect, which)?;
    let mut out = Vec::new();
    isolate(w.rect, w.count, which, &mut out)?;
    Ok((out, w))
}

/// Lowest ordinate scanned. R vanishes at the negative even integers, so the
/// bottom edge of every scan stays off the real axis; below it there are no
/// zeros in the default window.
pub const SCAN_T_MIN: f64 = 0.5;
/// Height of the horizontal bands scanned in parallel.
pub const SCAN_BAND: f64 = 10.0;

/// Default σ-window (1 − T^(3/7) − 2, 5).
pub fn default_beta_window(t: f64) -> (f64, f64) {
    (1.0 - t.powf(3.0 / 7.0) - 2.0, 5.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCatalog {
    pub records: Vec<ZeroRecord>,
    /// Every zero with 0 < γ ≤ t_frontier inside `beta_window` is present.
    pub t_frontier: f64,
    pub beta_window: (f64, f64),
    /// Top edge actually integrated over, which sits up to 3e−4 above
    /// t_frontier when the nominal edge met a zero.
    pub t_scanned: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Sidecar {
    t_frontier: f64,
    beta_window: (f64, f64),
    t_scanned: f64,
    t_min: f64,
    records: usize,
    code_version: String,
}

fn bands(rect: &RectangleRegion) -> Vec<RectangleRegion> {
    let n = ((rect.height() / SCAN_BAND).ceil() as usize).max(1);
    let h = rect.height() / n as f64;
    (0..n)
        .map(|k| RectangleRegion {
            t_min: rect.t_min + h * k as f64,
            t_max: if k + 1 == n {
                rect.t_max
            } else {
                rect.t_min + h * (k + 1) as f64
            },
            ..*rect
        })
        .collect()
}

/// Scans the given rectangles band by band (bands in parallel).
fn scan_rects(rects: &[RectangleRegion], which: Which) -> Result<Vec<ZeroRecord>> {
    let cells: Vec<RectangleRegion> = rects.iter().flat_map(bands).collect();
    let results: Vec<(RectangleRegion, Result<Vec<ZeroRecord>>)> = cells
        .par_iter()
        .map(|cell| (*cell, scan_cell(cell, which)))
        .collect();
    let mut records = Vec::new();
    let mut failed = Vec::new();
    for (cell, r) in results {
        match r {
            Ok(v) => records.extend(v),
            Err(e) => failed.push(format!("{cell}: {e}")),
        }
    }
    if !failed.is_empty() {
        return Err(Error::ScanFailed { cells: failed });
    }
    Ok(records)
}

/// One band; a split line through a zero is moved rather than perturbed
/// outward, so neighbouring bands stay disjoint.
fn scan_cell(cell: &RectangleRegion, which: Which) -> Result<Vec<ZeroRecord>> {
    let mut out = Vec::new();
    let count = winding_exact(cell, which)?;
    isolate(*cell, count, which, &mut out)?;
    Ok(out)
}

fn sort_records(records: &mut [ZeroRecord]) {
    records.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.beta.total_cmp(&b.beta)));
}

/// Scan of the rectangle `beta_window × [SCAN_T_MIN, T]`.
pub fn scan_catalog(t: f64, beta_window: Option<(f64, f64)>, which: Which) -> Result<ZeroCatalog> {
    check_scan_t(t)?;
    let window = beta_window.unwrap_or_else(|| default_beta_window(t));
    let rect = RectangleRegion::new(window.0, window.1, SCAN_T_MIN, t)?;
    let (mut records, top) = scan_with_retry(&rect, which)?;
    records.retain(|r| r.gamma <= t);
    sort_records(&mut records);
    flag_multiplicities(&mut records);
    Ok(ZeroCatalog {
        records,
        t_frontier: t,
        beta_window: window,
        t_scanned: top,
    })
}

fn check_scan_t(t: f64) -> Result<()> {
    if !(t > SCAN_T_MIN) {
        return Err(Error::InvalidInput(format!(
            "scan height {t} must exceed {SCAN_T_MIN}"
        )));
    }
    if t > QUADRATURE_T_MAX {
        return Err(Error::regime(
            "scan_catalog",
            Complex64::new(0.0, t),
            format!("T > {QUADRATURE_T_MAX}"),
        ));
    }
    Ok(())
}

/// Scans `rect`; if a band edge runs through a zero the whole band layout is
/// moved by raising the top edge 1e−4 and the scan repeated. Returns the
/// records and the top edge actually used.
fn scan_with_retry(rect: &RectangleRegion, which: Which) -> Result<(Vec<ZeroRecord>, f64)> {
    let mut last = None;
    for k in 0..4u32 {
        let shifted = if k == 0 {
            *rect
        } else {
            RectangleRegion {
                t_max: rect.t_max + BOUNDARY_PERTURBATION * f64::from(k),
                ..*rect
            }
        };
        match scan_rects(&[shifted], which) {
            Ok(r) => return Ok((r, shifted.t_max)),
            Err(e @ Error::ScanFailed { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Records within 1e−6 of each other are merged into one with summed
/// multiplicity.
fn flag_multiplicities(records: &mut Vec<ZeroRecord>) {
    let mut merged: Vec<ZeroRecord> = Vec::with_capacity(records.len());
    for r in records.drain(..) {
        if let Some(last) = merged.last_mut() {
            if (last.rho() - r.rho()).norm() < MULTIPLE_ZERO_SIDE {
                last.multiplicity += r.multiplicity;
                continue;
            }
        }
        merged.push(r);
    }
    *records = merged;
}

impl ZeroCatalog {
    /// Extends the catalog to height `t` with the default window for `t`,
    /// scanning only the parts of the new window not already covered.
    pub fn extend(&self, t: f64, which: Which) -> Result<ZeroCatalog> {
        check_scan_t(t)?;
        let window = default_beta_window(t);
        let window = (
            window.0.min(self.beta_window.0),
            window.1.max(self.beta_window.1),
        );
        if t <= self.t_frontier && window == self.beta_window {
            return Ok(self.clone());
        }
        let old_top = self.t_frontier;
        let mut pieces = Vec::new();
        if window.0 < self.beta_window.0 {
            pieces.push(RectangleRegion::new(
                window.0,
                self.beta_window.0,
                SCAN_T_MIN,
                old_top,
            )?);
        }
        if window.1 > self.beta_window.1 {
            pieces.push(RectangleRegion::new(
                self.beta_window.1,
                window.1,
                SCAN_T_MIN,
                old_top,
            )?);
        }
        if t > old_top {
            pieces.push(RectangleRegion::new(window.0, window.1, old_top, t)?);
        }
        let mut records = self.records.clone();
        let mut top = self.t_scanned;
        for p in &pieces {
            let (found, used) = scan_with_retry(p, which)?;
            records.extend(found.into_iter().filter(|r| r.gamma <= t.max(old_top)));
            if p.t_max > old_top {
                top = used;
            }
        }
        sort_records(&mut records);
        flag_multiplicities(&mut records);
        Ok(ZeroCatalog {
            records,
            t_frontier: t.max(old_top),
            beta_window: window,
            t_scanned: top,
        })
    }

    /// Records with γ ≤ t.
    pub fn up_to(&self, t: f64) -> impl Iterator<Item = &ZeroRecord> {
        self.records.iter().filter(move |r| r.gamma <= t)
    }

    /// N_R(t), counted with multiplicity.
    pub fn count(&self, t: f64) -> Result<u64> {
        self.check_frontier(t)?;
        Ok(self.up_to(t).map(|r| u64::from(r.multiplicity)).sum())
    }

    /// Winding number of f around the whole scanned region, to be compared
    /// with the total multiplicity of the records.
    pub fn winding_total(&self, which: Which) -> Result<Winding> {
        let rect = RectangleRegion::new(
            self.beta_window.0,
            self.beta_window.1,
            SCAN_T_MIN,
            self.t_scanned,
        )?;
        winding_count(&rect, which)
    }

    /// Total multiplicity of the records.
    pub fn total_multiplicity(&self) -> u64 {
        self.records.iter().map(|r| u64::from(r.multiplicity)).sum()
    }

    pub fn check_frontier(&self, t: f64) -> Result<()> {
        if t > self.t_frontier {
            return Err(Error::BeyondFrontier {
                t,
                frontier: self.t_frontier,
            });
        }
        Ok(())
    }

    pub fn csv_path(dir: &Path) -> PathBuf {
        dir.join("zeros.csv")
    }

    pub fn sidecar_path(dir: &Path) -> PathBuf {
        dir.join("zeros.json")
    }

    /// Writes `zeros.csv` and `zeros.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut w = csv::Writer::from_path(Self::csv_path(dir))?;
        w.write_record(["beta", "gamma", "multiplicity", "residual"])?;
        for r in &self.records {
            w.write_record([
                plain15(r.beta),
                plain15(r.gamma),
                r.multiplicity.to_string(),
                plain15(r.residual),
            ])?;
        }
        w.flush()?;
        let side = Sidecar {
            t_frontier: self.t_frontier,
            beta_window: self.beta_window,
            t_scanned: self.t_scanned,
            t_min: SCAN_T_MIN,
            records: self.records.len(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        fs::write(
            Self::sidecar_path(dir),
            serde_json::to_string_pretty(&side)? + "\n",
        )?;
        Ok(())
    }

    /// Reads a catalog written by [`ZeroCatalog::save`]. The source
    /// rectangles are not persisted; each record gets its own point.
    pub fn load(dir: &Path) -> Result<ZeroCatalog> {
        let side: Sidecar = serde_json::from_str(&fs::read_to_string(Self::sidecar_path(dir))?)?;
        let mut rdr = csv::Reader::from_path(Self::csv_path(dir))?;
        let mut records = Vec::new();
        for row in rdr.deserialize() {
            let (beta, gamma, multiplicity, residual): (f64, f64, u32, f64) = row?;
            records.push(ZeroRecord {
                beta,
                gamma,
                multiplicity,
                residual,
                source_rect: RectangleRegion {
                    sigma_min: beta,
                    sigma_max: beta,
                    t_min: gamma,
                    t_max: gamma,
                },
            });
        }
        Ok(ZeroCatalog {
            records,
            t_frontier: side.t_frontier,
            beta_window: side.beta_window,
            t_scanned: side.t_scanned,
        })
    }
}

/// Plain decimal with 15 significant digits.
pub fn plain15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (14 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountStats {
    pub n_r: u64,
    pub n_le: u64,
    pub n_gt: u64,
    pub sum_beta: f64,
    /// Σ (σ − β) over β ≤ σ.
    pub sum_excess_le: f64,
    /// Σ (β − σ) over β > σ.
    pub sum_excess_gt: f64,
}

pub fn count_stats(catalog: &ZeroCatalog, sigma: f64, t: f64) -> Result<CountStats> {
    catalog.check_frontier(t)?;
    let (lo, hi) = catalog.beta_window;
    if !(sigma >= lo && sigma <= hi) {
        return Err(Error::InvalidInput(format!(
            "σ = {sigma} outside the scanned window ({lo}, {hi})"
        )));
    }
    let mut st = CountStats {
        n_r: 0,
        n_le: 0,
        n_gt: 0,
        sum_beta: 0.0,
        sum_excess_le: 0.0,
        sum_excess_gt: 0.0,
    };
    for r in catalog.up_to(t) {
        let m = u64::from(r.multiplicity);
        let mf = f64::from(r.multiplicity);
        st.n_r += m;
        st.sum_beta += mf * r.beta;
        if r.beta <= sigma {
            st.n_le += m;
            st.sum_excess_le += mf * (sigma - r.beta);
        } else {
            st.n_gt += m;
            st.sum_excess_gt += mf * (r.beta - sigma);
        }
    }
    Ok(st)
}

/// T/4π log(T/2π) − T/4π − ½√(T/2π), the zero-count main terms.
pub fn count_main_terms(t: f64) -> f64 {
    t / (4.0 * PI) * (t / (2.0 * PI)).ln() - t / (4.0 * PI) - 0.5 * (t / (2.0 * PI)).sqrt()
}

/// f(σ′) = −1 + log((1−2σ′)(3−2σ′)/2)/(½−σ′), maximised near σ′ = −3/5.
pub fn density_f(sigma_p: f64) -> f64 {
    -1.0 + ((1.0 - 2.0 * sigma_p) * (3.0 - 2.0 * sigma_p) / 2.0).ln() / (0.5 - sigma_p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub t: f64,
    /// N(β ≤ ½, T).
    pub lhs: u64,
    /// 35T/396π + (5/11π)∫ log|R(½+it)| dt.
    pub rhs: f64,
    pub slack: f64,
    pub f_at_minus_three_fifths: f64,
    pub f_exceeds_seven_eighteenths: bool,
    /// Coefficient of T in the lower bound for zeros left of the line.
    pub coefficient_corollary: f64,
    /// The same quantity as quoted in the introduction, twice the above.
    pub coefficient_introduction: f64,
    pub pass: bool,
}

pub fn density_check(
    catalog: &ZeroCatalog,
    t: f64,
    log_r_half_integral: f64,
) -> Result<DensityReport> {
    let st = count_stats(catalog, 0.5, t)?;
    let rhs = 35.0 * t / (396.0 * PI) + 5.0 / (11.0 * PI) * log_r_half_integral;
    let f35 = density_f(-0.6);
    let holds = f35 > 7.0 / 18.0;
    Ok(DensityReport {
        t,
        lhs: st.n_le,
        rhs,
        slack: st.n_le as f64 - rhs,
        f_at_minus_three_fifths: f35,
        f_exceeds_seven_eighteenths: holds,
        coefficient_corollary: 35.0 / (396.0 * PI),
        coefficient_introduction: 35.0 / (198.0 * PI),
        pass: holds && st.n_le as f64 >= rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_decimal_format() {
        assert_eq!(plain15(123.456), "123.456000000000");
        assert_eq!(plain15(-0.5), "-0.500000000000000");
        assert_eq!(plain15(0.0), "0");
        assert!(!plain15(1.5e-17).contains('e'));
    }

    #[test]
    fn density_helper() {
        let f = density_f(-0.6);
        assert!((f - 0.391_267_913_721_497_7).abs() < 1e-15, "{f}");
        assert!(f > 7.0 / 18.0);
        assert!(density_f(0.49) < density_f(0.4));
    }

    #[test]
    fn zero_free_rectangle() {
        let r = RectangleRegion::new(2.0, 4.0, 40.0, 60.0).unwrap();
        assert_eq!(winding_count(&r, Which::R).unwrap().count, 0);
    }

    #[test]
    fn rectangle_validation() {
        assert!(RectangleRegion::new(1.0, 0.0, 1.0, 2.0).is_err());
        assert!(RectangleRegion::new(0.0, 1.0, 0.0, 2.0).is_err());
    }
}
