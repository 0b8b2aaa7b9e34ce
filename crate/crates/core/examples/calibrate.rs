//! The pinned constants of the trend checks, and how they are produced.

use auxzeta::config::{pin, FittedConstants, SAFETY_FACTOR};

fn main() {
    let k = FittedConstants::bundled();
    println!("bundled constants (observed residual x {SAFETY_FACTOR}, rounded up to two digits):");
    print!("{}", k.to_toml());
    println!("e.g. an observed residual of 0.742 pins to {}", pin(0.742));
    println!("run `auxzeta scan --T 400 && auxzeta calibrate` to refit against a fresh catalog");
}
