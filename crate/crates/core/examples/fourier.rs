// Transform, inversion and Plancherel on F_5^2, plus the measure tags.

use ffrl::fourier::{convolve_dm, hat, inv};
use ffrl::space::{random_function, Distribution};
use ffrl::{FiniteField, GridFunction, Space};
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    let space = Space::new(Arc::new(FiniteField::from_order(5)?), 2)?;
    let g = random_function(space.clone(), 7, Distribution::ComplexGaussian);
    let g_hat = hat(&g)?;
    println!(
        "g on (F_5^2, {}), g^ on (F_5^2, {})",
        g.measure_tag(),
        g_hat.measure_tag()
    );
    println!("||g||_2 = {:.12}", g.lp_norm(2.0)?);
    println!("||g^||_2 = {:.12}", g_hat.lp_norm(2.0)?);
    println!("max |(g^)^vee - g| = {:.2e}", inv(&g_hat)?.max_abs_diff(&g));

    // the transform of a point mass is a character
    let delta = GridFunction::delta(
        space.clone(),
        space.index(&[space.field().from_int(1), space.field().from_int(2)]),
    );
    let d_hat = hat(&delta)?;
    println!(
        "|delta^| is constant: {}",
        d_hat.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12)
    );

    let h = random_function(space, 8, Distribution::SparseZeroOne(0.2));
    let conv = convolve_dm(&g, &h)?;
    let lhs = hat(&conv)?;
    let rhs: Vec<_> = g_hat
        .values()
        .iter()
        .zip(hat(&h)?.values())
        .map(|(a, b)| a * b)
        .collect();
    let err = lhs
        .values()
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("(g * h)^ = g^ h^ up to {err:.2e}");

    let mut text = Vec::new();
    g.write_columns(&mut text)?;
    println!("{}", String::from_utf8_lossy(&text).lines().next().unwrap_or(""));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
