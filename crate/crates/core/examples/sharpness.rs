// Extension ratio of the largest affine subspace in the paraboloid of
// F_q^4, below and above the critical exponent.

use ffrl::constants::{predicted_slope, sharpness_sweep, ScanKind};

pub fn run() -> ffrl::Result<()> {
    let qs = [5, 13];
    for p in [1.4, 1.5, 1.6] {
        let report = sharpness_sweep(ScanKind::Paraboloid, 4, p, &qs)?;
        for row in &report.rows {
            println!(
                "p={p} q={:>2} |H|={:>3} |P|={:>5} ratio={:.6}",
                row.record.q, row.subspace_size, row.variety_size, row.record.ratio
            );
        }
        println!(
            "p={p}: fitted slope {:.4}, predicted {:.4}",
            report.slope,
            predicted_slope(4, p, 1.0, 3.0)
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
