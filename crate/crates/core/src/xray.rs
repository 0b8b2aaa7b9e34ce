//! X-rays: the curves Re f = 0 and Im f = 0 over a window. Zeros of f are
//! the points where the two families cross.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rzeta::{log_comb, rzeta};
use crate::zeros::RectangleRegion;
use crate::zeta::zeta;

/// Largest accepted resolution.
pub const MAX_RESOLUTION: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum XrayFunction {
    R,
    F,
    Zeta,
}

impl XrayFunction {
    /// A positive multiple of f(s); only signs of the real and imaginary
    /// parts are used, and F itself overflows far from the origin.
    fn eval_direction(self, s: Complex64) -> Result<Complex64> {
        match self {
            XrayFunction::R => rzeta(s),
            XrayFunction::F => {
                let phase = Complex64::from_polar(1.0, log_comb(s)?.im);
                Ok(phase * rzeta(s)?)
            }
            XrayFunction::Zeta => zeta(s),
        }
    }
}

impl std::str::FromStr for XrayFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(XrayFunction::R),
            "F" | "f" => Ok(XrayFunction::F),
            "zeta" => Ok(XrayFunction::Zeta),
            _ => Err(Error::InvalidInput(format!("unknown x-ray function {s:?}"))),
        }
    }
}

type Segment = [(f64, f64); 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Xray {
    pub function: XrayFunction,
    pub window: RectangleRegion,
    pub nx: usize,
    pub ny: usize,
    /// Sampled values, row-major with t increasing; `None` where evaluation failed.
    pub values: Vec<Option<Complex64>>,
    pub re_segments: Vec<Segment>,
    pub im_segments: Vec<Segment>,
    /// Points where a Re segment meets an Im segment.
    pub crossings: Vec<Complex64>,
    pub failures: usize,
}

/// Samples f on an `resolution` × ny grid (ny keeps square pixels) and traces
/// both zero sets.
pub fn xray(function: XrayFunction, window: &RectangleRegion, resolution: usize) -> Result<Xray> {
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::InvalidInput(format!(
            "resolution must lie in 2..={MAX_RESOLUTION}, got {resolution}"
        )));
    }
    let nx = resolution;
    let h = window.width() / (nx - 1) as f64;
    let ny = ((window.height() / h).round() as usize + 1).max(2);
    let hy = window.height() / (ny - 1) as f64;
    let values: Vec<Option<Complex64>> = (0..ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let t = window.t_min + hy * j as f64;
            (0..nx).map(move |i| {
                let s = Complex64::new(window.sigma_min + h * i as f64, t);
                function
                    .eval_direction(s)
                    .ok()
                    .filter(|v| v.re.is_finite() && v.im.is_finite())
            })
        })
        .collect();
    let failures = values.iter().filter(|v| v.is_none()).count();
    let coord = |i: usize, j: usize| {
        (
            window.sigma_min + h * i as f64,
            window.t_min + hy * j as f64,
        )
    };
    let re_segments = march(&values, nx, ny, |v| v.re, &coord);
    let im_segments = march(&values, nx, ny, |v| v.im, &coord);
    let crossings = crossings(&re_segments, &im_segments);
    Ok(Xray {
        function,
        window: *window,
        nx,
        ny,
        values,
        re_segments,
        im_segments,
        crossings,
        failures,
    })
}

/// Marching squares on the zero level of `part`. Cells touching a failed
/// sample are skipped.
fn march<P, C>(
    values: &[Option<Complex64>],
    nx: usize,
    ny: usize,
    part: P,
    coord: &C,
) -> Vec<Segment>
where
    P: Fn(Complex64) -> f64,
    C: Fn(usize, usize) -> (f64, f64),
{
    let mut out = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            // corners counter-clockwise from the lower left
            let idx = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let mut v = [0.0; 4];
            let mut ok = true;
            for (k, &(a, b)) in idx.iter().enumerate() {
                match values[b * nx + a] {
                    Some(z) => v[k] = part(z),
                    None => ok = false,
                }
            }
            if !ok {
                continue;
            }
            let mut pts = Vec::with_capacity(4);
            for k in 0..4 {
                let (a, b) = (v[k], v[(k + 1) % 4]);
                if (a >= 0.0) != (b >= 0.0) {
                    let w = a / (a - b);
                    let p = coord(idx[k].0, idx[k].1);
                    let q = coord(idx[(k + 1) % 4].0, idx[(k + 1) % 4].1);
                    pts.push((k, (p.0 + w * (q.0 - p.0), p.1 + w * (q.1 - p.1))));
                }
            }
            match pts.len() {
                2 => out.push([pts[0].1, pts[1].1]),
                4 => {
                    // saddle: the centre value decides the pairing
                    let centre = v.iter().sum::<f64>() / 4.0;
                    if (centre >= 0.0) == (v[0] >= 0.0) {
                        out.push([pts[0].1, pts[3].1]);
                        out.push([pts[1].1, pts[2].1]);
                    } else {
                        out.push([pts[0].1, pts[1].1]);
                        out.push([pts[2].1, pts[3].1]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn intersect(a: &Segment, b: &Segment) -> Option<(f64, f64)> {
    let (p, r) = (a[0], (a[1].0 - a[0].0, a[1].1 - a[0].1));
    let (q, s) = (b[0], (b[1].0 - b[0].0, b[1].1 - b[0].1));
    let den = r.0 * s.1 - r.1 * s.0;
    if den == 0.0 {
        return None;
    }
    let d = (q.0 - p.0, q.1 - p.1);
    let u = (d.0 * s.1 - d.1 * s.0) / den;
    let v = (d.0 * r.1 - d.1 * r.0) / den;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then_some((p.0 + u * r.0, p.1 + u * r.1))
}

/// Intersections of the two families. Segments from the same cell are
/// compared directly; a crossing on a shared cell edge is reported once.
fn crossings(re: &[Segment], im: &[Segment]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    let bbox = |s: &Segment| {
        (
            s[0].0.min(s[1].0),
            s[0].0.max(s[1].0),
            s[0].1.min(s[1].1),
            s[0].1.max(s[1].1),
        )
    };
    let mut im_sorted: Vec<(f64, usize)> =
        im.iter().enumerate().map(|(k, s)| (bbox(s).0, k)).collect();
    im_sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let width = im
        .iter()
        .map(|s| {
            let b = bbox(s);
            b.1 - b.0
        })
        .fold(0.0, f64::max);
    for a in re {
        let ba = bbox(a);
        let lo = im_sorted.partition_point(|x| x.0 < ba.0 - width);
        for &(x0, k) in &im_sorted[lo..] {
            if x0 > ba.1 {
                break;
            }
            let bb = bbox(&im[k]);
            if bb.3 < ba.2 || bb.2 > ba.3 {
                continue;
            }
            if let Some(p) = intersect(a, &im[k]) {
                let z = Complex64::new(p.0, p.1);
                let tiny = 1e-9 * (1.0 + z.norm());
                if !out.iter().any(|w| (w - z).norm() < tiny) {
                    out.push(z);
                }
            }
        }
    }
    out.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    out
}

impl Xray {
    /// Grid spacing in σ, the size of one pixel.
    pub fn pixel(&self) -> f64 {
        self.window.width() / (self.nx - 1) as f64
    }

    /// SVG with one path per family, σ to the right and t upward.
    pub fn to_svg(&self) -> String {
        let w = &self.window;
        let scale = 800.0 / w.width().max(w.height());
        let (pw, ph) = (w.width() * scale, w.height() * scale);
        let x = |s: f64| (s - w.sigma_min) * scale;
        let y = |t: f64| (w.t_max - t) * scale;
        let path = |segs: &[Segment]| {
            let mut d = String::new();
            for s in segs {
                let _ = write!(
                    d,
                    "M{:.2} {:.2}L{:.2} {:.2}",
                    x(s[0].0),
                    y(s[0].1),
                    x(s[1].0),
                    y(s[1].1)
                );
            }
            d
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw:.0}" height="{ph:.0}" viewBox="0 0 {pw:.2} {ph:.2}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<g id="re-zero" fill="none" stroke="black" stroke-width="0.8"><path d="{}"/></g>"#,
            path(&self.re_segments)
        );
        let _ = writeln!(
            out,
            r#"<g id="im-zero" fill="none" stroke="red" stroke-width="0.8"><path d="{}"/></g>"#,
            path(&self.im_segments)
        );
        if w.sigma_min <= 0.5 && w.sigma_max >= 0.5 {
            let _ = writeln!(
                out,
                r#"<line id="critical-line" x1="{0:.2}" y1="0" x2="{0:.2}" y2="{1:.2}" stroke="blue" stroke-width="0.4" stroke-dasharray="4 4"/>"#,
                x(0.5),
                ph
            );
        }
        out.push_str("</svg>\n");
        out
    }

    /// Sign grids as CSV: i, j, sigma, t, re_sign, im_sign (blank on failure).
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut wtr = csv::Writer::from_path(path)?;
        wtr.write_record(["i", "j", "sigma", "t", "re_sign", "im_sign"])?;
        let h = self.pixel();
        let hy = self.window.height() / (self.ny - 1) as f64;
        let sign = |x: f64| {
            if x > 0.0 {
                "1"
            } else if x < 0.0 {
                "-1"
            } else {
                "0"
            }
        };
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (re, im) = match self.values[j * self.nx + i] {
                    Some(v) => (sign(v.re), sign(v.im)),
                    None => ("", ""),
                };
                wtr.write_record([
                    i.to_string(),
                    j.to_string(),
                    format!("{}", self.window.sigma_min + h * i as f64),
                    format!("{}", self.window.t_min + hy * j as f64),
                    re.to_string(),
                    im.to_string(),
                ])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }

    /// Writes `<stem>.svg` and `<stem>_signs.csv` into `dir`.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let svg = dir.join(format!("{stem}.svg"));
        std::fs::write(&svg, self.to_svg())?;
        let csv = dir.join(format!("{stem}_signs.csv"));
        self.write_csv(&csv)?;
        Ok((svg, csv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_cross_once() {
        let a = [(0.0, 0.0), (1.0, 1.0)];
        let b = [(0.0, 1.0), (1.0, 0.0)];
        assert_eq!(intersect(&a, &b), Some((0.5, 0.5)));
        let c = [(2.0, 0.0), (3.0, 1.0)];
        assert_eq!(intersect(&a, &c), None);
    }

    #[test]
    fn rejects_bad_resolution() {
        let w = RectangleRegion::new(0.0, 1.0, 10.0, 11.0).unwrap();
        assert!(xray(XrayFunction::R, &w, 1).is_err());
        assert!(xray(XrayFunction::R, &w, MAX_RESOLUTION + 1).is_err());
    }
}
