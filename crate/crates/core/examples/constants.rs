// Lower bounds for restriction constants by search, next to the exact
// L^2 constant and the tracked upper bounds.

use ffrl::constants::{estimate_r, r2_exact, r2_operator_norm, upper_bound, EstimateParams, Strategy};
use ffrl::lifting::{alpha, FunctionClass};
use ffrl::varieties::Variety;
use ffrl::FiniteField;
use std::sync::Arc;

pub fn run() -> ffrl::Result<()> {
    let f = Arc::new(FiniteField::from_order(5)?);
    let sphere = Variety::sphere(f.clone(), 2, f.from_int(1))?;
    let power = r2_operator_norm(&sphere)?;
    println!(
        "R(2 -> 2) on {}: power iteration {:.10} in {} steps, exact {:.10}",
        sphere.label(),
        power.value,
        power.iterations,
        r2_exact(&sphere)
    );

    let cone = Variety::homogeneous_cone(f, 2)?;
    let params = EstimateParams {
        p: alpha(2),
        r: 2.0,
        class: FunctionClass::All,
        strategies: Strategy::ALL.to_vec(),
        budget: 200,
        seed: 42,
    };
    let est = estimate_r(&cone, &params)?;
    println!("{}", ffrl::constants::RatioRecord::CSV_HEADER);
    for rec in &est.by_strategy {
        println!("{}", rec.csv_row());
    }
    println!(
        "best {:.6} via {}, tracked bound {:?}",
        est.best.ratio,
        est.best.provenance.label(),
        upper_bound(&cone, params.p, params.r, params.class)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
