//! ζ(s) by Euler–Maclaurin, Hardy's Z(t), and the identity
//! ζ(s) = R(s) + χ(s) conj(R(1 − conj s)).

use auxzeta::rzeta::rzeta;
use auxzeta::special::{chi, theta};
use auxzeta::zeta::{w_factor, z_function_detailed, zeta};
use auxzeta::Complex64;

fn main() -> auxzeta::Result<()> {
    println!("zeta(2) = {:.15}", zeta(Complex64::new(2.0, 0.0))?.re);

    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let s = Complex64::new(-2.0 + 6.0 * i as f64 / 19.0, 10.0 + 190.0 * j as f64 / 19.0);
            let z = zeta(s)?;
            let dual = rzeta(Complex64::new(1.0, 0.0) - s.conj())?.conj();
            let r = (z - rzeta(s)? - chi(s)? * dual).norm() / (1.0 + z.norm());
            worst = worst.max(r);
        }
    }
    println!("max relative defect of the identity on a 20x20 grid: {worst:.2e}");

    for t in [14.0, 14.134725, 21.022, 100.0] {
        let z = z_function_detailed(t)?;
        println!(
            "Z({t}) = {:+.10}   via R: {:+.10}   theta = {:.6}",
            z.z,
            z.via_r,
            theta(t)
        );
    }

    let w = w_factor(Complex64::new(6.0, 100.0), 1.0)?;
    println!(
        "|R/zeta - 1| at 6+100i = {:.2e} (bound {:.2e})",
        w.value.norm(),
        w.claimed_abs_error
    );
    Ok(())
}
