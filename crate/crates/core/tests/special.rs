use auxzeta::special::{
    bernoulli3_periodic, chi, log_gamma, odd_bernoulli_integral_bound, per, theta, PerSeries,
};
use auxzeta::{Complex64, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn log_gamma_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = c(rng.gen_range(0.5..50.0), rng.gen_range(-100.0..100.0));
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = z.ln() + log_gamma(z).unwrap();
        // equal modulo 2πi only on the principal branch of log z; log_gamma is the continuous branch
        let d = lhs - rhs;
        let k = (d.im / (2.0 * PI)).round();
        worst = worst.max((d - c(0.0, 2.0 * PI * k)).norm());
        assert_eq!(k, 0.0, "branch jump at {z}");
    }
    assert!(worst <= 1e-12, "worst {worst:e}");
}

#[test]
fn log_gamma_known_values() {
    assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
    let half = log_gamma(c(0.5, 0.0)).unwrap();
    assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
    // |Γ(iy)|² = π/(y sinh πy)
    let y = 7.0f64;
    let g = log_gamma(c(0.0, y)).unwrap();
    assert!((2.0 * g.re - (PI / (y * (PI * y).sinh())).ln()).abs() < 1e-12);
    assert!(matches!(
        log_gamma(c(-3.0, 0.0)),
        Err(Error::GammaPole { .. })
    ));
}

#[test]
fn chi_reflection() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let s = c(rng.gen_range(-5.0..6.0), rng.gen_range(1.0..300.0));
        let p = chi(s).unwrap() * chi(c(1.0, 0.0) - s).unwrap();
        assert!((p - 1.0).norm() <= 1e-11, "{s}: {p}");
    }
}

#[test]
fn theta_matches_asymptotic() {
    for t in [50.0, 100.0, 400.0] {
        let asym = t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
            + 1.0 / (48.0 * t)
            + 7.0 / (5760.0 * t * t * t);
        assert!((theta(t) - asym).abs() < 1e-9, "{t}");
    }
}

#[test]
fn per_special_values() {
    let s = PerSeries::default();
    assert_eq!(per(0.0, s), 0.0);
    assert_eq!(per(0.5, s), 0.0);
    assert!((per(0.25, s) - 1.8319311884).abs() <= 1e-6);
    assert!((per(0.75, s) + 1.8319311884).abs() <= 1e-6);
    assert!(s.tail_bound() <= 3e-5);
    assert!(PerSeries::new(0).is_err());
}

proptest! {
    #[test]
    fn per_is_periodic(k in -1000i64..1000, m in 0u32..1024) {
        let s = PerSeries::new(2000).unwrap();
        let x = f64::from(m) / 1024.0;
        prop_assert_eq!(per(x + k as f64, s).to_bits(), per(x, s).to_bits());
    }

    #[test]
    fn per_is_odd(m in 1u32..1024) {
        let s = PerSeries::new(2000).unwrap();
        let x = f64::from(m) / 1024.0;
        prop_assert!((per(x, s) + per(1.0 - x, s)).abs() < 1e-12);
    }

    #[test]
    fn chi_times_dual_is_one(sigma in -3.0f64..4.0, t in 2.0f64..400.0) {
        let s = c(sigma, t);
        let p = chi(s).unwrap() * chi(c(1.0, 0.0) - s).unwrap();
        prop_assert!((p - 1.0).norm() <= 1e-11);
    }
}

/// Composite Simpson on [a, b] with step at most 1e−3, split at the given
/// interior knots so each panel sees a polynomial integrand.
fn simpson(f: impl Fn(f64) -> f64, knots: &[f64]) -> f64 {
    knots
        .windows(2)
        .map(|w| {
            let n = (((w[1] - w[0]) / 1e-3).ceil() as usize).max(1) * 2;
            let h = (w[1] - w[0]) / n as f64;
            let mut acc = f(w[0]) + f(w[1]);
            for i in 1..n {
                acc += f(w[0] + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            acc * h / 3.0
        })
        .sum()
}

#[test]
fn bernoulli_bound_constant() {
    let b = odd_bernoulli_integral_bound(1, (1.0, 0.0)).unwrap();
    assert!((b - 3.0 / 64.0).abs() < 1e-16);
    assert!(matches!(
        odd_bernoulli_integral_bound(4, (1.0, 1.0)),
        Err(Error::UnsupportedOrder(4))
    ));
    assert!(odd_bernoulli_integral_bound(1, (-1.0, 1.0)).is_err());
    assert_eq!(bernoulli3_periodic(0.5), 0.0);
    assert!((bernoulli3_periodic(3.25) - bernoulli3_periodic(0.25)).abs() < 1e-15);
}

/// 200 random monotone nonnegative piecewise-linear f on (a, b) ⊂ (0, 50).
#[test]
fn bernoulli_integral_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut worst = f64::NEG_INFINITY;
    for case in 0..200 {
        let a = rng.gen_range(0.0..49.0);
        let b = rng.gen_range(a + 0.01..50.0);
        let pieces = rng.gen_range(1..6);
        let mut xs: Vec<f64> = (0..pieces - 1).map(|_| rng.gen_range(a..b)).collect();
        xs.push(a);
        xs.push(b);
        xs.sort_by(f64::total_cmp);
        let mut ys: Vec<f64> = (0..xs.len()).map(|_| rng.gen_range(0.0..10.0)).collect();
        ys.sort_by(f64::total_cmp);
        if case % 2 == 0 {
            ys.reverse();
        }
        let f = |x: f64| {
            let i = xs.partition_point(|&k| k <= x).clamp(1, xs.len() - 1);
            let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
            if x1 == x0 {
                y1
            } else {
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        };
        let mut knots = xs.clone();
        knots.extend((a.ceil() as i64..=b.floor() as i64).map(|k| k as f64));
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let integral = simpson(|x| f(x) * bernoulli3_periodic(x), &knots);
        let bound = odd_bernoulli_integral_bound(1, (ys[0], ys[ys.len() - 1])).unwrap();
        worst = worst.max(integral.abs() - bound);
        assert!(
            integral.abs() <= bound + 1e-6,
            "case {case}: |{integral}| > {bound}"
        );
    }
    assert!(worst <= 1e-6);
}
