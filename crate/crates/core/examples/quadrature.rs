//! Adaptive Gauss–Kronrod quadrature, including integrands with
//! logarithmic singularities such as log|R| across a zero.

use auxzeta::quad::Quadrature;

fn main() -> auxzeta::Result<()> {
    let q = Quadrature::with_abs_tol(1e-12);
    let e = q.integrate(|x: f64| Ok(x.sin()), 0.0, std::f64::consts::PI)?;
    println!("∫ sin on [0, π] = {:.15} ({} nodes)", e.value, e.nodes_used);

    // ∫_0^2 log|x − 1| dx = −2
    let e = q.integrate_singular(|x: f64| Ok((x - 1.0).abs().ln()), 0.0, 2.0, &[1.0])?;
    println!(
        "∫ log|x − 1| on [0, 2] = {:.12} (exact −2), error estimate {:.1e}",
        e.value, e.abs_error_estimate
    );
    Ok(())
}
