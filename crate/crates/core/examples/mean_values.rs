//! Mean values of log|Γ|, of the per term, of log|e^(πiη)| and of log|J|.

use auxzeta::config::{per_grid, FittedConstants};
use auxzeta::verify::{
    gamma_mean_check, littlemean_check, mean_j_check, per_integral_check, MEAN_T0,
};

fn main() -> auxzeta::Result<()> {
    let k = FittedConstants::bundled();

    let g = gamma_mean_check(100, 2024)?;
    println!(
        "gamma mean: max deviation {:.4} (bound {:.4})",
        g.lhs, g.rhs
    );

    let p = per_integral_check(&per_grid(), MEAN_T0, k.kappa3)?;
    for row in p.details["rows"].as_array().into_iter().flatten() {
        println!(
            "  T = {:>5}  lhs {:>9.4}  -sqrt(T/2π) per = {:>9.4}",
            row["T"],
            row["lhs"].as_f64().unwrap_or(0.0),
            row["rhs"].as_f64().unwrap_or(0.0)
        );
    }
    println!(
        "per identity: worst residual {:.3} (kappa3 = {})",
        p.residual, k.kappa3
    );

    for t in [100.0, 200.0, 400.0] {
        let l = littlemean_check(t, MEAN_T0, k.kappa4)?;
        let j = mean_j_check(t, MEAN_T0, k.kappa5)?;
        println!(
            "T = {t}: little mean {:.3} vs {:.3};  log|J| mean {:.1}, main-form residual {:.1}, refined {:.1}",
            l.lhs, l.rhs, j.lhs, j.details["main_residual"].as_f64().unwrap_or(f64::NAN), j.details["refined_residual"].as_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
