// Lifting lay functions to the cone and homogeneous functions to H_j.

use ffrl::lifting::{lay_bracket, random_hom, random_lay, HomTransfer, LayTransfer};
use ffrl::FiniteField;
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    let f = Arc::new(FiniteField::from_order(5)?);
    let d = 2;

    let lay = LayTransfer::new(f.clone(), d)?;
    let g = random_lay(f.clone(), d, 1)?;
    let r = lay.check(&g, Some(1))?;
    println!("lay lift on F_5^2 -> F_5^3");
    println!(
        "  ||G^||_C^2 / ||g^||_P^2 = {:.12} (expected {:.12})",
        r.transfer_ratio.unwrap_or(f64::NAN),
        r.transfer_constant
    );
    println!(
        "  ||G||_a^a / ||g||_a^a = {:.12} (bracket {:.12})",
        r.alpha_power_ratio.unwrap_or(f64::NAN),
        lay_bracket(5.0, r.alpha)
    );
    println!(
        "  ||g^||_P / ||g||_a = {:.4} <= {:.4}",
        r.restriction_ratio.unwrap_or(f64::NAN),
        r.bound
    );

    let hom = HomTransfer::new(f.clone(), d, f.from_int(2))?;
    let g = random_hom(f, d, 2)?;
    let r = hom.check(&g, Some(2))?;
    println!("homogeneous lift onto H_2, |S_2| = {}", hom.sphere().cardinality());
    println!(
        "  ||G||_a = {:.12}, ||g||_a = {:.12}",
        r.lifted_alpha_norm, r.source_alpha_norm
    );
    println!(
        "  ||g^||_S / ||g||_a = {:.4} <= {:.4}",
        r.restriction_ratio.unwrap_or(f64::NAN),
        r.bound
    );
    println!("  passed: {}", r.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
