//! Littlewood's identity on [-1, 4] x [20, 60] for R, and Backlund's bound
//! on a horizontal segment.

use auxzeta::verify::{backlund_bound_check, littlewood_closure};
use auxzeta::zeros::{scan_catalog, RectangleRegion, Which};
use auxzeta::Complex64;

fn main() -> auxzeta::Result<()> {
    let cat = scan_catalog(70.0, None, Which::R)?;
    let rect = RectangleRegion::new(-1.0, 4.0, 20.0, 60.0)?;
    let rep = littlewood_closure(&rect, Which::R, &cat.records)?;
    println!("2π Σ(β − a)        = {:.10}", rep.lhs);
    println!("boundary integrals = {:.10}", rep.rhs);
    println!("residual {:.2e}  pass {}", rep.residual, rep.pass);
    println!("sides {}", rep.details["sides"]);

    let rep = backlund_bound_check(
        Which::R,
        Complex64::new(4.0, 65.0),
        Complex64::new(-1.0, 65.0),
        10.0,
        &cat.records,
    )?;
    println!("Backlund: |Δ arg|/2π = {:.4} <= {:.4}", rep.lhs, rep.rhs);
    Ok(())
}
