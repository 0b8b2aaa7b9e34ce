use auxzeta::config::{per_grid, theorem_grid, FittedConstants};
use auxzeta::verify::{
    backlund_bound_check, cumulative_line_integrals, gamma_asymptotic_check,
    gamma_half_mean_closed, gamma_mean_check, jensen_meansquare_check, left_asymptotic_check,
    littlemean_check, littlemean_closed, littlemean_exact, littlewood_closure,
    log_f_decomposition_check, log_modulus_line_integral, mean_j_check, omega_count_check,
    per_integral_check, thm1_check, thm2_check, thm3_check, LineFunction, Report, DEFAULT_T0,
    GAMMA_MEAN_BOUND, LITTLEWOOD_TOL, MEAN_T0,
};
use auxzeta::zeros::{scan_catalog, RectangleRegion, Which, ZeroCatalog};
use auxzeta::{Complex64, Error};
use std::sync::OnceLock;

fn catalog() -> &'static ZeroCatalog {
    static CAT: OnceLock<ZeroCatalog> = OnceLock::new();
    CAT.get_or_init(|| scan_catalog(200.0, None, Which::R).unwrap())
}

fn k() -> FittedConstants {
    FittedConstants::bundled()
}

#[test]
fn littlewood_on_preregistered_rectangles() {
    let rects = [
        (-1.0, 4.0, 20.0, 60.0),
        (-3.0, 2.0, 60.0, 90.0),
        (0.0, 3.0, 10.0, 30.0),
        (-2.0, 5.0, 90.0, 120.0),
        (-5.0, 1.0, 120.0, 160.0),
    ];
    for (a, b, lo, hi) in rects {
        let rect = RectangleRegion::new(a, b, lo, hi).unwrap();
        let rep = littlewood_closure(&rect, Which::R, &catalog().records).unwrap();
        assert!(rep.residual <= LITTLEWOOD_TOL, "{rect:?}: {}", rep.residual);
        assert!(rep.pass);
    }
}

#[test]
fn littlewood_for_f() {
    let rect = RectangleRegion::new(-1.0, 4.0, 20.0, 60.0).unwrap();
    let rep = littlewood_closure(&rect, Which::F, &catalog().records).unwrap();
    assert!(rep.residual <= LITTLEWOOD_TOL, "{}", rep.residual);
}

#[test]
fn backlund_bound_holds() {
    let rep = backlund_bound_check(
        Which::R,
        Complex64::new(4.0, 65.0),
        Complex64::new(-1.0, 65.0),
        10.0,
        &catalog().records,
    )
    .unwrap();
    assert!(rep.pass && rep.lhs <= rep.rhs);
    assert!(backlund_bound_check(
        Which::R,
        Complex64::new(0.0, 50.0),
        Complex64::new(0.0, 70.0),
        10.0,
        &[]
    )
    .is_err());
}

#[test]
fn line_integrals_are_reproducible() {
    let zs = &catalog().records;
    let a = log_modulus_line_integral(LineFunction::R, 0.5, DEFAULT_T0, 200.0, zs, None).unwrap();
    let b = log_modulus_line_integral(LineFunction::R, 0.5, DEFAULT_T0, 200.0, zs, None).unwrap();
    assert_eq!(a.value().to_bits(), b.value().to_bits());
    assert!(a.estimate.abs_error_estimate >= 0.0);
    for &p in &a.estimate.singular_points_excluded {
        assert!(zs.iter().any(|z| (z.gamma - p).abs() <= 1e-6));
    }
    let parts =
        cumulative_line_integrals(LineFunction::R, 0.5, DEFAULT_T0, &[150.0, 200.0], zs).unwrap();
    assert!((parts[1] - a.value()).abs() <= 1e-5 * (1.0 + a.value().abs()));
}

#[test]
fn line_integral_with_log_singularity() {
    // ∫_1^3 log|t − 2| dt = −2
    let f = |s: Complex64| Ok(Complex64::new(s.im - 2.0, 0.0));
    let zero = auxzeta::zeros::ZeroRecord {
        beta: 0.0,
        gamma: 2.0,
        multiplicity: 1,
        residual: 0.0,
        source_rect: RectangleRegion::new(-1.0, 1.0, 1.0, 3.0).unwrap(),
    };
    let r = log_modulus_line_integral(
        LineFunction::Custom(&f),
        0.3,
        1.0,
        3.0,
        &[zero],
        Some(1e-10),
    )
    .unwrap();
    assert!((r.value() + 2.0).abs() < 1e-8, "{}", r.value());
}

#[test]
fn gamma_mean_within_bound() {
    let rep = gamma_mean_check(100, 2024).unwrap();
    assert!(rep.pass && rep.lhs <= GAMMA_MEAN_BOUND);
    assert!((GAMMA_MEAN_BOUND - 3.0 * 3f64.sqrt() / 16.0).abs() < 1e-15);
    // closed form against a direct integral at one point
    let direct =
        log_modulus_line_integral(LineFunction::GammaHalf, -7.0, 1.0, 80.0, &[], Some(1e-10))
            .unwrap();
    assert!((direct.value() - gamma_half_mean_closed(-7.0, 1.0, 80.0)).abs() <= GAMMA_MEAN_BOUND);
}

#[test]
fn per_identity_and_little_means() {
    let k = k();
    let rep = per_integral_check(&per_grid(), MEAN_T0, k.kappa3).unwrap();
    assert!(rep.pass, "{}", rep.residual);
    assert_eq!(
        littlemean_closed(0.0, 100.0),
        littlemean_exact(0.0, MEAN_T0, 100.0)
    );
    for t in [100.0, 200.0, 400.0] {
        assert!(littlemean_check(t, MEAN_T0, k.kappa4).unwrap().pass);
        let j = mean_j_check(t, MEAN_T0, k.kappa5).unwrap();
        assert!(j.pass);
        assert_eq!(j.details["refined_smaller"], true);
    }
}

#[test]
fn log_f_decomposition() {
    let k = k();
    let rep =
        log_f_decomposition_check(4.0, 200.0, MEAN_T0, &catalog().records, k.kappa6, k.kappa7)
            .unwrap();
    assert!(rep.pass, "{}", rep.to_json());
    let edge = 1.0 - 200f64.powf(3.0 / 7.0);
    let rep =
        log_f_decomposition_check(edge, 200.0, MEAN_T0, &catalog().records, k.kappa6, k.kappa7)
            .unwrap();
    assert!(rep.pass, "{}", rep.to_json());
    assert!(matches!(
        log_f_decomposition_check(-10.0, 200.0, MEAN_T0, &[], k.kappa6, k.kappa7),
        Err(Error::OutOfRegime { .. } | Error::InvalidInput(_))
    ));
    assert!(
        gamma_asymptotic_check(-10.0, 200.0, MEAN_T0, k.kappa6)
            .unwrap()
            .pass
    );
}

#[test]
fn first_and_second_theorems() {
    let k = k();
    let grid = theorem_grid(200.0);
    for sigma in [1.0, 0.5] {
        let rep = thm1_check(sigma, &grid, catalog(), DEFAULT_T0, k.kappa1).unwrap();
        assert!(rep.pass, "σ = {sigma}: {}", rep.residual);
    }
    let rep = thm2_check(4.0, &grid, catalog(), DEFAULT_T0, k.kappa2).unwrap();
    assert!(rep.pass, "{}", rep.residual);
    assert!(matches!(
        thm1_check(1.0, &theorem_grid(300.0), catalog(), DEFAULT_T0, k.kappa1),
        Err(Error::BeyondFrontier { .. })
    ));
}

#[test]
fn third_theorem_scale() {
    let rep = thm3_check(&[4.0, 5.0, 6.0, 7.0], 300.0, DEFAULT_T0, k().thm3_c).unwrap();
    assert!(rep.pass && rep.lhs <= 50.0);
    assert!(thm3_check(&[3.0], 300.0, DEFAULT_T0, 1.0).is_err());
}

#[test]
fn jensen_mean_square() {
    let rep = jensen_meansquare_check(-0.6, 200.0, DEFAULT_T0, Some(catalog())).unwrap();
    assert!(rep.pass, "{}", rep.to_json());
}

#[test]
fn left_asymptotic_trend() {
    let ts: Vec<f64> = (0..10).map(|i| 100.0 + 300.0 * i as f64 / 9.0).collect();
    let rep = left_asymptotic_check(&ts, k().asymptotic_a).unwrap();
    assert!(rep.pass && rep.lhs <= 20.0, "{}", rep.to_json());
}

#[test]
fn omega_against_right_count() {
    let rep = omega_count_check(catalog(), &[50.0, 100.0, 150.0, 200.0], k().kappa_omega).unwrap();
    assert!(rep.pass, "{}", rep.to_json());
}

#[test]
fn reports_serialise() {
    let rep = gamma_mean_check(5, 1).unwrap();
    let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
    assert_eq!(back, rep);
    for key in [
        "check_name",
        "inputs",
        "lhs",
        "rhs",
        "residual",
        "normalizer",
        "fitted_constants",
        "pass",
    ] {
        assert!(rep.to_json().contains(&format!("\"{key}\"")));
    }
}
