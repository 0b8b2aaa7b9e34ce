//! The phase ω of R on the critical line, sign changes of Z, and the lower
//! bound for zeros of R left of the critical line.

use auxzeta::config::FittedConstants;
use auxzeta::verify::{
    critical_line_check, log_modulus_line_integral, omega_count_check, LineFunction, DEFAULT_T0,
};
use auxzeta::zeros::{density_check, scan_catalog, Which};

fn main() -> auxzeta::Result<()> {
    let k = FittedConstants::bundled();
    let cat = scan_catalog(300.0, None, Which::R)?;

    let c = critical_line_check(&cat, 101.0, 300.0, 0.02)?;
    println!(
        "(101, 300]: {} sign changes of Z, {} zeros of cos(θ − ω), {} zeros of R on the line",
        c.details["z_sign_changes"],
        c.details["cos_phase_zeros"],
        c.details["catalog_zeros_on_line"]
    );

    let o = omega_count_check(&cat, &[50.0, 100.0, 200.0, 300.0], k.kappa_omega)?;
    for row in o.details["rows"].as_array().into_iter().flatten() {
        println!(
            "  T = {:>4}: ω/2π = {:.3}, zeros with β ≥ 1/2: {}",
            row["T"],
            row["omega_over_2pi"].as_f64().unwrap_or(0.0),
            row["count_right"]
        );
    }

    let int =
        log_modulus_line_integral(LineFunction::R, 0.5, DEFAULT_T0, 300.0, &cat.records, None)?;
    let d = density_check(&cat, 300.0, int.value())?;
    println!(
        "N(β ≤ 1/2, 300) = {} >= {:.3}: {}   f(-3/5) = {:.4}",
        d.lhs, d.rhs, d.pass, d.f_at_minus_three_fifths
    );
    Ok(())
}
