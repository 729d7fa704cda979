// Point counts and Fourier decay of the cone, the homogeneous spheres and
// the paraboloid.

use ffrl::closedform::decay_max;
use ffrl::varieties::Variety;
use ffrl::FiniteField;
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    for q in [3, 5, 7] {
        let f = Arc::new(FiniteField::from_order(q)?);
        for d in [2, 3] {
            let mut list = vec![
                Variety::paraboloid(f.clone(), d)?,
                Variety::homogeneous_cone(f.clone(), d)?,
            ];
            list.push(Variety::homogeneous_sphere(f.clone(), d, f.from_int(1))?);
            list.push(Variety::sphere(f.clone(), d, f.from_int(1))?);
            for v in &list {
                let r = decay_max(v)?;
                println!(
                    "q={q} d={d} {:<14} |V| = {:>4}  max |(dsigma)^vee| = {:.5}  q^(-d/2) = {:.5}",
                    v.label(),
                    v.cardinality(),
                    r.max_nonzero_modulus,
                    r.bound
                );
            }
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
