//! Scans for the zeros of R up to T = 100, saves the catalog and checks the
//! count against the main terms of the counting function.

use auxzeta::zeros::{count_main_terms, scan_catalog, Which, ZeroCatalog};

fn main() -> auxzeta::Result<()> {
    let cat = scan_catalog(100.0, None, Which::R)?;
    println!(
        "window beta in {:?}, t up to {}",
        cat.beta_window, cat.t_frontier
    );
    println!(
        "{:>12} {:>12} {:>5} {:>10}",
        "beta", "gamma", "mult", "residual"
    );
    for z in &cat.records {
        println!(
            "{:>12.6} {:>12.6} {:>5} {:>10.1e}",
            z.beta, z.gamma, z.multiplicity, z.residual
        );
    }
    for t in [50.0, 100.0] {
        println!(
            "N({t}) = {}   main terms {:.3}",
            cat.count(t)?,
            count_main_terms(t)
        );
    }
    println!("winding total {}", cat.winding_total(Which::R)?.count);

    let dir = std::env::temp_dir().join("auxzeta-catalog");
    cat.save(&dir)?;
    let back = ZeroCatalog::load(&dir)?;
    assert_eq!(back.records.len(), cat.records.len());
    println!("saved to {}", dir.display());
    Ok(())
}
