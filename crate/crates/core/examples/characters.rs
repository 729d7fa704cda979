// Additive and quadratic characters of F_9, and the Gauss sums built from them.

use ffrl::{FieldElement, FiniteField};

pub fn run() -> ffrl::Result<()> {
    let f = FiniteField::from_order(9)?;
    println!(
        "F_{} over F_{}, modulus coefficients (low first) {:?}",
        f.order(),
        f.characteristic(),
        f.modulus()
    );
    for a in f.elements() {
        let chi = f.chi(a);
        println!(
            "a = {a}  Tr = {}  chi = {:+.3}{:+.3}i  eta = {:+}",
            f.trace(a).0,
            chi.re,
            chi.im,
            f.eta(a)
        );
    }
    let g1 = f.gauss_sum(FieldElement::ONE);
    println!("G_1 = {:.6}{:+.6}i, |G_1|^2 = {:.6}", g1.re, g1.im, g1.norm_sqr());
    let a = f.from_int(2);
    let b = FieldElement(4);
    let direct: ffrl::Complex64 = f
        .elements()
        .map(|s| f.chi(f.add(f.mul(a, f.square(s)), f.mul(b, s))))
        .sum();
    let closed = f.weil_square_sum(a, b)?;
    println!("sum chi(2s^2 + bs): direct {direct:.6}, completed square {closed:.6}");
    assert!((direct - closed).norm() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
