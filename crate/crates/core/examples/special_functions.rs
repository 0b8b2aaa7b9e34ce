//! log Γ, χ, θ, the periodic function per, the Bernoulli bound, and a
//! continuously tracked argument.

use auxzeta::special::{
    bernoulli3_periodic, chi, log_gamma, odd_bernoulli_integral_bound, per, theta, ArgTrackOptions,
    ContinuousArg, PerSeries,
};
use auxzeta::Complex64;

fn main() -> auxzeta::Result<()> {
    let z = Complex64::new(0.3, -250.0);
    println!("log Γ({z}) = {:.12}", log_gamma(z)?);
    let s = Complex64::new(0.25, 30.0);
    println!(
        "χ(s) χ(1 − s) = {:.3e}",
        chi(s)? * chi(Complex64::new(1.0, 0.0) - s)?
    );
    println!("θ(100) = {:.12}", theta(100.0));

    let series = PerSeries::default();
    for x in [0.0, 0.125, 0.25, 0.5, 0.75] {
        println!("per({x}) = {:+.10}", per(x, series));
    }
    println!(
        "B3 at 0.2: {:.6}, bound for f(a) = 1, f(b) = 0.5: {:.6}",
        bernoulli3_periodic(0.2),
        odd_bernoulli_integral_bound(3, (1.0, 0.5))?
    );

    // arg z goes from π/4 to 3π/4, so arg z^3 changes by 3π/2
    let f = |z: Complex64| Ok(z * z * z);
    let arg = ContinuousArg::track(
        f,
        Complex64::new(1.0, 1.0),
        Complex64::new(-1.0, 1.0),
        None,
        ArgTrackOptions::default(),
    )?;
    println!(
        "arg change of z^3 from 1 + i to -1 + i: {:.6}",
        arg.total_change()
    );
    Ok(())
}
