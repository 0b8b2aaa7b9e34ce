//! R(s) by contour quadrature, by its main sum, and by the left-region
//! product; plus the entire function F(s).

use auxzeta::config::FittedConstants;
use auxzeta::rzeta::{
    bigF, eta_branch, rzeta_left_asymptotic, rzeta_mainsum, rzeta_quadrature, xi_decomposition,
    AsymptoticRegime,
};
use auxzeta::Complex64;

fn main() -> auxzeta::Result<()> {
    let k = FittedConstants::bundled();

    let s = Complex64::new(4.0, 110.0);
    let q = rzeta_quadrature(s, 1e-13)?;
    let m = rzeta_mainsum(s, k.mainsum_c)?;
    println!("s = {s}   ell = {}", xi_decomposition(s).ell);
    println!(
        "  quadrature  {:.15}  (± {:.1e})",
        q.value, q.abs_error_estimate
    );
    println!(
        "  main sum    {:.15}  (± {:.1e})",
        m.value, m.claimed_abs_error
    );

    let regime = AsymptoticRegime::default();
    let t = 200.0;
    let s = Complex64::new(regime.edge(t), t);
    let a = rzeta_left_asymptotic(s, &regime, k.asymptotic_a)?;
    let q = rzeta_quadrature(s, 1e-13)?.value;
    println!("s = {s:.4}   eta = {:.6}", eta_branch(s).eta);
    println!("  quadrature  {q:.6e}");
    println!(
        "  asymptotic  {:.6e}  (claimed relative error {:.3})",
        a.value, a.claimed_rel_error
    );
    println!(
        "  observed relative error {:.3}",
        (a.value - q).norm() / q.norm()
    );

    let s = Complex64::new(-3.0, 0.0);
    println!(
        "F(-3) = {:.6}, |R(-3)| = {:.1e}",
        bigF(s)?,
        rzeta_quadrature(s, 1e-13)?.value.norm()
    );
    Ok(())
}
