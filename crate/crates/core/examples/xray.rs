//! X-ray of F on (-40, 40)^2: the curves Re F = 0 and Im F = 0 as SVG, and
//! the sign grids as CSV.

use auxzeta::xray::{xray, XrayFunction};
use auxzeta::zeros::RectangleRegion;

fn main() -> auxzeta::Result<()> {
    let window = RectangleRegion::window(-40.0, 40.0, -40.0, 40.0)?;
    let x = xray(XrayFunction::F, &window, 201)?;
    let dir = std::env::temp_dir().join("auxzeta-xray");
    let (svg, csv) = x.write(&dir, "f")?;
    println!(
        "{} x {} grid, {} + {} segments, {} gaps",
        x.nx,
        x.ny,
        x.re_segments.len(),
        x.im_segments.len(),
        x.failures
    );
    for z in &x.crossings {
        println!("  crossing near {:.2}", z);
    }
    println!("{}\n{}", svg.display(), csv.display());
    Ok(())
}
