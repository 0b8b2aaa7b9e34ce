//! The two Littlewood-type theorems and the bound for large σ, on a zero
//! catalog reaching T = 300.

use auxzeta::config::{theorem_grid, FittedConstants};
use auxzeta::verify::{thm1_check, thm2_check, thm2_count_difference, thm3_check, DEFAULT_T0};
use auxzeta::zeros::{scan_catalog, Which};

fn main() -> auxzeta::Result<()> {
    let k = FittedConstants::bundled();
    let cat = scan_catalog(300.0, None, Which::R)?;
    let grid = theorem_grid(300.0);

    for sigma in [1.0, 0.5] {
        let r = thm1_check(sigma, &grid, &cat, DEFAULT_T0, k.kappa1)?;
        println!(
            "first theorem at σ = {sigma}: max residual/log T = {:.3} (kappa1 {})",
            r.residual, k.kappa1
        );
    }
    let r = thm2_check(4.0, &grid, &cat, DEFAULT_T0, k.kappa2)?;
    println!(
        "second theorem at σ = 4: max residual/T^(20/21) = {:.3}",
        r.residual
    );
    let r = thm2_count_difference(&grid, &cat, DEFAULT_T0, k.kappa2)?;
    println!(
        "count from σ = 5 minus σ = 4: {} zeros, predicted {:.2}",
        r.lhs, r.rhs
    );
    let r = thm3_check(&[4.0, 5.0, 6.0, 7.0], 300.0, DEFAULT_T0, k.thm3_c)?;
    println!(
        "large σ: fitted C = {:.3}, decreasing {}",
        r.lhs, r.details["decreasing"]
    );
    Ok(())
}
