// The five inequalities behind the L^alpha -> L^2 estimate on the cone
// and on H_1, for a few random functions on F_3^5.

use ffrl::constants::SteinTomas;
use ffrl::space::{random_function, Distribution};
use ffrl::varieties::Variety;
use ffrl::{FiniteField, Space};
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    let f = Arc::new(FiniteField::from_order(3)?);
    let d = 4;
    let space = Space::new(f.clone(), d + 1)?;
    for v in [
        Variety::homogeneous_cone(f.clone(), d)?,
        Variety::homogeneous_sphere(f.clone(), d, f.from_int(1))?,
    ] {
        let chain = SteinTomas::new(&v)?;
        for seed in 0..3 {
            let g = random_function(space.clone(), seed, Distribution::ComplexGaussian);
            let report = chain.check(&g)?;
            let cells: Vec<String> = report
                .checks
                .iter()
                .map(|c| format!("{} {:.3e} <= {:.3e}", c.name, c.lhs, c.rhs))
                .collect();
            println!("{} seed {seed}: {}", v.label(), cells.join(", "));
            assert!(report.passed());
        }
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
