use auxzeta::xray::{xray, XrayFunction};
use auxzeta::zeros::RectangleRegion;
use auxzeta::Complex64;
use std::path::Path;

const FIRST_ZERO: Complex64 = Complex64::new(-1.572867, 22.422892);

#[test]
fn first_zero_is_one_crossing() {
    let w = RectangleRegion::window(-2.5, -0.5, 21.5, 23.5).unwrap();
    let x = xray(XrayFunction::R, &w, 101).unwrap();
    assert_eq!(x.failures, 0);
    assert_eq!(x.crossings.len(), 1, "{:?}", x.crossings);
    assert!((x.crossings[0] - FIRST_ZERO).norm() <= 2.0 * x.pixel());
}

#[test]
fn zero_free_window_has_no_crossings() {
    let w = RectangleRegion::window(2.0, 4.0, 40.0, 60.0).unwrap();
    let x = xray(XrayFunction::R, &w, 81).unwrap();
    assert!(x.crossings.is_empty(), "{:?}", x.crossings);
}

#[test]
fn zeta_window_shows_critical_zeros() {
    let w = RectangleRegion::window(-1.0, 2.0, 10.0, 40.0).unwrap();
    let x = xray(XrayFunction::Zeta, &w, 61).unwrap();
    let want = [14.1347, 21.0220, 25.0109, 30.4249, 32.9351, 37.5862];
    assert_eq!(x.crossings.len(), want.len(), "{:?}", x.crossings);
    for (z, g) in x.crossings.iter().zip(want) {
        assert!(
            (z.re - 0.5).abs() <= 2.0 * x.pixel() && (z.im - g).abs() <= 2.0 * x.pixel(),
            "{z}"
        );
    }
    assert!(x.to_svg().contains("critical-line"));
}

#[test]
fn f_on_the_large_square() {
    let w = RectangleRegion::window(-40.0, 40.0, -40.0, 40.0).unwrap();
    let x = xray(XrayFunction::F, &w, 161).unwrap();
    // the zeros of R up to t = 40 lie left of σ = 1, those below the axis
    // run off to the lower right
    assert!(x.crossings.iter().any(|z| (z - FIRST_ZERO).norm() < 1.0));
    let upper = x.crossings.iter().filter(|z| z.im > 0.0).count();
    let lower = x.crossings.iter().filter(|z| z.im < 0.0).count();
    assert!(upper >= 2, "{:?}", x.crossings);
    assert!(lower >= 4, "{:?}", x.crossings);
    // both families are dense over the whole window
    assert!(x.re_segments.len() > 1000 && x.im_segments.len() > 1000);
    assert!(x.failures * 50 < x.nx * x.ny);
}

#[test]
fn outputs_are_well_formed() {
    let w = RectangleRegion::window(-2.5, -0.5, 21.5, 23.5).unwrap();
    let x = xray(XrayFunction::R, &w, 11).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (svg, csv) = x.write(dir.path(), "r").unwrap();
    let text = std::fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert!(text.contains("re-zero") && text.contains("im-zero"));
    let rows = std::fs::read_to_string(csv).unwrap();
    assert_eq!(rows.lines().next(), Some("i,j,sigma,t,re_sign,im_sign"));
    assert_eq!(rows.lines().count(), 1 + x.nx * x.ny);
}

#[test]
fn svg_matches_golden() {
    let w = RectangleRegion::window(-2.5, -0.5, 21.5, 23.5).unwrap();
    let svg = xray(XrayFunction::R, &w, 21).unwrap().to_svg();
    let again = xray(XrayFunction::R, &w, 21).unwrap().to_svg();
    assert_eq!(svg, again);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/xray_first_zero.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &svg).unwrap();
    }
    assert_eq!(svg, std::fs::read_to_string(golden).unwrap());
}

#[test]
fn bad_inputs() {
    let w = RectangleRegion::window(0.0, 1.0, 0.0, 1.0).unwrap();
    assert!(xray(XrayFunction::R, &w, 1).is_err());
    assert!(xray(XrayFunction::R, &w, 5000).is_err());
    assert!("zeta".parse::<XrayFunction>().is_ok());
    assert!("G".parse::<XrayFunction>().is_err());
}
