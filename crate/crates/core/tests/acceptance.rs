//! The acceptance gate: ten criteria, one PASS/FAIL line each. Exits nonzero
//! if any criterion fails.

use auxzeta::config::{per_grid, FittedConstants};
use auxzeta::rzeta::rzeta;
use auxzeta::special::{bernoulli3_periodic, chi, odd_bernoulli_integral_bound, per, PerSeries};
use auxzeta::verify::{
    critical_line_check, gamma_mean_check, left_asymptotic_check, littlewood_closure,
    log_modulus_line_integral, per_integral_check, thm3_check, LineFunction, DEFAULT_T0,
    GAMMA_MEAN_BOUND, LITTLEWOOD_TOL, MEAN_T0,
};
use auxzeta::zeros::{
    count_main_terms, density_check, density_f, scan_catalog, winding_count, RectangleRegion,
    Which, ZeroCatalog,
};
use auxzeta::zeta::zeta;
use auxzeta::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    summary: String,
}

type Res = auxzeta::Result<Outcome>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Res + 'a>);

fn catalog() -> &'static ZeroCatalog {
    static CAT: OnceLock<ZeroCatalog> = OnceLock::new();
    CAT.get_or_init(|| scan_catalog(400.0, None, Which::R).expect("scan to T = 400"))
}

fn closure() -> Res {
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let s = Complex64::new(-2.0 + 6.0 * i as f64 / 19.0, 10.0 + 190.0 * j as f64 / 19.0);
            let z = zeta(s)?;
            let dual = rzeta(Complex64::new(1.0, 0.0) - s.conj())?.conj();
            worst = worst.max((z - rzeta(s)? - chi(s)? * dual).norm() / (1.0 + z.norm()));
        }
    }
    Ok(Outcome {
        pass: worst <= 1e-9,
        summary: format!("max relative defect {worst:.2e} (tol 1e-9)"),
    })
}

fn littlewood() -> Res {
    let rect = RectangleRegion::new(-1.0, 4.0, 20.0, 60.0)?;
    let rep = littlewood_closure(&rect, Which::R, &catalog().records)?;
    Ok(Outcome {
        pass: rep.residual <= LITTLEWOOD_TOL,
        summary: format!(
            "lhs {:.10}, boundary {:.10}, residual {:.2e} (tol 1e-4)",
            rep.lhs, rep.rhs, rep.residual
        ),
    })
}

fn zero_count() -> Res {
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [50.0, 100.0, 200.0, 400.0] {
        let n = catalog().count(t)?;
        let d = n as f64 - count_main_terms(t);
        pass &= d.abs() <= 3.0;
        parts.push(format!("N({t}) = {n} ({d:+.3})"));
    }
    Ok(Outcome {
        pass,
        summary: format!("{} (tol 3)", parts.join(", ")),
    })
}

fn gamma_mean() -> Res {
    let rep = gamma_mean_check(100, 2024)?;
    Ok(Outcome {
        pass: rep.lhs <= GAMMA_MEAN_BOUND,
        summary: format!(
            "max |numeric − closed| {:.4} over 100 samples (bound 3√3/16 = {GAMMA_MEAN_BOUND:.4})",
            rep.lhs
        ),
    })
}

fn large_sigma(k: &FittedConstants) -> Res {
    let rep = thm3_check(&[4.0, 5.0, 6.0, 7.0], 300.0, DEFAULT_T0, k.thm3_c)?;
    let decreasing = rep.details["decreasing"] == true;
    Ok(Outcome {
        pass: rep.lhs <= 50.0 && rep.lhs <= k.thm3_c && decreasing,
        summary: format!(
            "fitted C {:.4} (pinned {}, limit 50), decreasing {decreasing}",
            rep.lhs, k.thm3_c
        ),
    })
}

fn left_region(k: &FittedConstants) -> Res {
    let ts: Vec<f64> = (0..10).map(|i| 100.0 + 300.0 * i as f64 / 9.0).collect();
    let rep = left_asymptotic_check(&ts, k.asymptotic_a)?;
    let lower = rep.details["median_lower_half"]
        .as_f64()
        .unwrap_or(f64::NAN);
    let upper = rep.details["median_upper_half"]
        .as_f64()
        .unwrap_or(f64::NAN);
    Ok(Outcome {
        pass: rep.pass && rep.lhs <= 20.0,
        summary: format!(
            "fitted A {:.4} (pinned {}, limit 20), median error {lower:.3} on t ≤ 250 vs {upper:.3} above",
            rep.lhs, k.asymptotic_a
        ),
    })
}

/// Simpson on each panel between knots, at most 1e−3 per step.
fn simpson(f: impl Fn(f64) -> f64, knots: &[f64]) -> f64 {
    knots
        .windows(2)
        .map(|w| {
            let n = (((w[1] - w[0]) / 1e-3).ceil() as usize).max(1) * 2;
            let h = (w[1] - w[0]) / n as f64;
            let inner: f64 = (1..n)
                .map(|i| f(w[0] + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 })
                .sum();
            (f(w[0]) + f(w[1]) + inner) * h / 3.0
        })
        .sum()
}

fn bernoulli_suite() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut worst = f64::NEG_INFINITY;
    let mut failures = 0;
    for case in 0..200 {
        let a = rng.gen_range(0.0..49.0);
        let b = rng.gen_range(a + 0.01..50.0);
        let mut xs: Vec<f64> = (0..rng.gen_range(0..5))
            .map(|_| rng.gen_range(a..b))
            .collect();
        xs.extend([a, b]);
        xs.sort_by(f64::total_cmp);
        let mut ys: Vec<f64> = (0..xs.len()).map(|_| rng.gen_range(0.0..10.0)).collect();
        ys.sort_by(f64::total_cmp);
        if case % 2 == 0 {
            ys.reverse();
        }
        let f = |x: f64| {
            let i = xs.partition_point(|&k| k <= x).clamp(1, xs.len() - 1);
            let (x0, x1) = (xs[i - 1], xs[i]);
            if x1 == x0 {
                ys[i]
            } else {
                ys[i - 1] + (ys[i] - ys[i - 1]) * (x - x0) / (x1 - x0)
            }
        };
        let mut knots = xs.clone();
        knots.extend((a.ceil() as i64..=b.floor() as i64).map(|k| k as f64));
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let integral = simpson(|x| f(x) * bernoulli3_periodic(x), &knots);
        let bound = odd_bernoulli_integral_bound(1, (ys[0], ys[ys.len() - 1]))?;
        let excess = integral.abs() - bound;
        worst = worst.max(excess);
        if excess > 1e-6 {
            failures += 1;
        }
    }
    Ok(Outcome {
        pass: failures == 0,
        summary: format!("200 random f, {failures} violations, max |∫f B3| − bound = {worst:.3e}"),
    })
}

fn per_identity(k: &FittedConstants) -> Res {
    let rep = per_integral_check(&per_grid(), MEAN_T0, k.kappa3)?;
    let s = PerSeries::default();
    let (p0, ph, pq) = (per(0.0, s), per(0.5, s), per(0.25, s));
    let exact = p0 == 0.0 && ph == 0.0;
    let quarter = (pq - 1.8319311884).abs() <= 1e-6;
    Ok(Outcome {
        pass: rep.pass && k.kappa3 <= 20.0 && exact && quarter,
        summary: format!(
            "worst residual {:.4} (pinned κ3 {}, limit 20); per(0) = {p0}, per(1/2) = {ph}, per(1/4) = {pq:.10}",
            rep.residual, k.kappa3
        ),
    })
}

fn critical_line() -> Res {
    let cat = catalog();
    let rep = critical_line_check(cat, 101.0, 300.0, 0.02)?;
    let int =
        log_modulus_line_integral(LineFunction::R, 0.5, DEFAULT_T0, 300.0, &cat.records, None)?;
    let d = density_check(cat, 300.0, int.value())?;
    let f35 = density_f(-0.6);
    Ok(Outcome {
        pass: rep.pass && d.pass && f35 > 7.0 / 18.0,
        summary: format!(
            "Z sign changes {}, cos(θ − ω) zeros {}, R zeros on the line {}; N(β ≤ 1/2, 300) = {} ≥ {:.3}; f(−3/5) = {f35:.5} > 7/18",
            rep.details["z_sign_changes"], rep.details["cos_phase_zeros"], rep.details["catalog_zeros_on_line"], d.lhs, d.rhs
        ),
    })
}

fn conservation() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut done = 0;
    let mut broken = 0;
    let mut zeros_seen = 0;
    while done < 50 {
        let s0 = rng.gen_range(-8.0..0.0);
        let t0 = rng.gen_range(2.0..350.0);
        let rect = RectangleRegion::new(
            s0,
            s0 + rng.gen_range(1.0..9.0),
            t0,
            t0 + rng.gen_range(5.0..40.0),
        )?;
        let mut pieces = vec![rect];
        for _ in 0..rng.gen_range(1..6) {
            let r = pieces.swap_remove(rng.gen_range(0..pieces.len()));
            let f = rng.gen_range(0.1..0.9);
            let (a, b) = if rng.gen_bool(0.5) {
                r.split(true, r.sigma_min + f * r.width())
            } else {
                r.split(false, r.t_min + f * r.height())
            };
            pieces.extend([a, b]);
        }
        let whole = winding_count(&rect, Which::R)?;
        let parts = pieces
            .iter()
            .map(|p| winding_count(p, Which::R))
            .collect::<auxzeta::Result<Vec<_>>>()?;
        // a perturbed boundary no longer tiles the rectangle; draw again
        if whole.perturbations > 0 || parts.iter().any(|w| w.perturbations > 0) {
            continue;
        }
        let sum: i64 = parts.iter().map(|w| w.count).sum();
        if sum != whole.count {
            broken += 1;
        }
        zeros_seen += whole.count;
        done += 1;
    }
    Ok(Outcome {
        pass: broken == 0,
        summary: format!(
            "50 partitions, {broken} mismatches, {zeros_seen} zeros enclosed in total"
        ),
    })
}

fn main() {
    let k = FittedConstants::bundled();
    let criteria: Vec<Criterion> = vec![
        (
            "Riemann–Siegel closure",
            Duration::from_secs(120),
            Box::new(closure),
        ),
        (
            "Littlewood closure",
            Duration::from_secs(300),
            Box::new(littlewood),
        ),
        (
            "zero count main terms",
            Duration::from_secs(600),
            Box::new(zero_count),
        ),
        (
            "Gamma mean value",
            Duration::from_secs(120),
            Box::new(gamma_mean),
        ),
        (
            "large-σ scale",
            Duration::from_secs(180),
            Box::new(|| large_sigma(&k)),
        ),
        (
            "left-region asymptotic",
            Duration::from_secs(600),
            Box::new(|| left_region(&k)),
        ),
        (
            "Bernoulli bound suite",
            Duration::from_secs(30),
            Box::new(bernoulli_suite),
        ),
        (
            "per-term identity",
            Duration::from_secs(600),
            Box::new(|| per_identity(&k)),
        ),
        (
            "critical-line connection",
            Duration::from_secs(600),
            Box::new(critical_line),
        ),
        (
            "winding conservation",
            Duration::from_secs(600),
            Box::new(conservation),
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (pass, summary) = match outcome {
            Ok(o) => (o.pass && took <= *limit, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {summary} [{:.1} s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
