// Explicit formulas for the cone and H_j transforms against the
// numerically computed transform of the surface measure.

use ffrl::closedform::{cone_fourier_closed, hj_fourier_closed};
use ffrl::varieties::{measure_transform, Variety};
use ffrl::FiniteField;
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    let f = Arc::new(FiniteField::from_order(7)?);
    let d = 2;
    let cone = Variety::homogeneous_cone(f.clone(), d)?;
    let fast = measure_transform(&cone)?;
    let space = cone.space();
    let mut worst: f64 = 0.0;
    for idx in 0..space.len() {
        let closed = cone_fourier_closed(&f, d, &space.coords(idx))?;
        worst = worst.max((closed - fast.values()[idx]).norm());
    }
    println!("cone, q=7, d=2: closed form vs transform, max err {worst:.2e}");

    let j = f.from_int(3);
    let h = Variety::homogeneous_sphere(f.clone(), d, j)?;
    let fast = measure_transform(&h)?;
    for idx in [1, 8, 57, 200] {
        let m = space.coords(idx);
        let closed = hj_fourier_closed(&f, d, j, &m)?;
        let labels: Vec<u32> = m.iter().map(|c| c.0).collect();
        println!(
            "H_3 at {labels:?}: closed {:+.6}{:+.6}i  transform {:+.6}{:+.6}i",
            closed.re,
            closed.im,
            fast.values()[idx].re,
            fast.values()[idx].im
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
