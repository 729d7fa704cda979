//! Gauss-sum closed forms for the Fourier transforms of the surface measures
//! on the homogeneous varieties C and H_j, and the decay checks built on them.
//!
//! For even d and m = (m', m_d, m_{d+1}) in F_q^{d+1}:
//!
//! ```text
//! (dsigma_c)^vee(m) = q^d/|C| delta_0(m)
//!     + G_1^{d-1}/|C| sum_{t != 0} eta(t) chi((|m'|^2 - 4 m_d m_{d+1}) / (-4t))
//!
//! (dsigma_j)^vee(m) = q^d/|H_j| delta_0(m)
//!     + G_1^{d+1}/(q |H_j|) eta(-j) sum_{t != 0} eta(t) chi((m_{d+1}^2 - j |m|^2) / (4jt))
//! ```
//!
//! with |m'|^2 = m_1^2 + ... + m_{d-1}^2 and |m|^2 = m_1^2 + ... + m_d^2.
//! Both formulas are evaluated with |C| = |H_j| = q^d; the t-sums are done
//! term by term.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::space::{Counting, GridFunction, Space};
use crate::varieties::{measure_transform, Variety};

fn check_even(d: usize) -> Result<()> {
    if d % 2 == 1 {
        Err(Error::OddDimension(d))
    } else {
        Ok(())
    }
}

fn check_len(d: usize, m: &[FieldElement]) -> Result<()> {
    if m.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a point of F_q^{}, got {} coordinates",
            d + 1,
            m.len()
        )));
    }
    Ok(())
}

/// sum over t != 0 of eta(t) chi(num / (den * t)).
fn twisted_eta_sum(field: &FiniteField, num: FieldElement, den: FieldElement) -> Complex64 {
    field
        .nonzero()
        .map(|t| {
            let arg = field.div(num, field.mul(den, t));
            field.chi(arg) * field.eta(t) as f64
        })
        .sum()
}

/// Closed form for `(dsigma_c)^vee(m)`, d even.
pub fn cone_fourier_closed(field: &FiniteField, d: usize, m: &[FieldElement]) -> Result<Complex64> {
    check_even(d)?;
    check_len(d, m)?;
    let q = field.order() as f64;
    let card = q.powi(d as i32);
    let norm_sq = m[..d - 1]
        .iter()
        .fold(FieldElement::ZERO, |acc, &x| field.add(acc, field.square(x)));
    let cross = field.mul(field.from_int(4), field.mul(m[d - 1], m[d]));
    let num = field.sub(norm_sq, cross);
    let den = field.neg(field.from_int(4));
    let g1 = field.gauss_sum(FieldElement::ONE);
    let origin = if m.iter().all(|c| c.is_zero()) {
        q.powi(d as i32) / card
    } else {
        0.0
    };
    Ok(origin + g1.powi(d as i32 - 1) / card * twisted_eta_sum(field, num, den))
}

/// Closed form for `(dsigma_j)^vee(m)`, d even, j != 0.
pub fn hj_fourier_closed(field: &FiniteField, d: usize, j: FieldElement, m: &[FieldElement]) -> Result<Complex64> {
    check_even(d)?;
    if j.is_zero() {
        return Err(Error::ZeroRadius);
    }
    check_len(d, m)?;
    let q = field.order() as f64;
    let card = q.powi(d as i32);
    let norm_sq = m[..d]
        .iter()
        .fold(FieldElement::ZERO, |acc, &x| field.add(acc, field.square(x)));
    let num = field.sub(field.square(m[d]), field.mul(j, norm_sq));
    let den = field.mul(field.from_int(4), j);
    let g1 = field.gauss_sum(FieldElement::ONE);
    let origin = if m.iter().all(|c| c.is_zero()) {
        q.powi(d as i32) / card
    } else {
        0.0
    };
    let eta = field.eta(field.neg(j)) as f64;
    Ok(origin + g1.powi(d as i32 + 1) / (q * card) * eta * twisted_eta_sum(field, num, den))
}

/// Largest |(dsigma)^vee| away from the origin.
#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub label: String,
    pub q: u32,
    pub d: usize,
    pub cardinality: usize,
    pub max_nonzero_modulus: f64,
    pub attaining_point: Vec<u32>,
    /// q^{-d/2}
    pub bound: f64,
    pub even_d: bool,
    pub homogeneous: bool,
}

impl DecayReport {
    pub const CSV_HEADER: &'static str = "label,q,d,max,bound,ratio";

    pub fn ratio(&self) -> f64 {
        self.max_nonzero_modulus / self.bound
    }

    /// Whether the q^{-d/2} decay bound is a claim for this variety (C or
    /// H_j with d even).
    pub fn bound_applies(&self) -> bool {
        self.homogeneous && self.even_d
    }

    pub fn within_bound(&self, rel_tol: f64) -> bool {
        self.max_nonzero_modulus <= self.bound * (1.0 + rel_tol)
    }

    pub fn attains_bound(&self, rel_tol: f64) -> bool {
        self.max_nonzero_modulus >= self.bound * (1.0 - rel_tol)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.label,
            self.q,
            self.d,
            self.max_nonzero_modulus,
            self.bound,
            self.ratio()
        )
    }
}

/// Computes `(dsigma)^vee` on the whole ambient space and reports its
/// maximum modulus over nonzero frequencies. The first maximizer in index
/// order is recorded.
pub fn decay_max(v: &Variety) -> Result<DecayReport> {
    let e = measure_transform(v)?;
    let (idx, max) =
        e.values()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, z)| (i, z.norm()))
            .fold(
                (1, f64::NEG_INFINITY),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
    let d = v.param_dim();
    let q = v.field().order();
    Ok(DecayReport {
        label: v.label(),
        q,
        d,
        cardinality: v.cardinality(),
        max_nonzero_modulus: max,
        attaining_point: v.space().coords(idx).iter().map(|c| c.0).collect(),
        bound: (q as f64).powf(-(d as f64) / 2.0),
        even_d: d.is_multiple_of(2),
        homogeneous: v.kind().is_homogeneous(),
    })
}

/// K = (dsigma)^vee - delta_0 for a homogeneous variety with even d.
pub fn decay_kernel(v: &Variety) -> Result<GridFunction<Counting>> {
    if !v.kind().is_homogeneous() {
        return Err(Error::UnsupportedVariety(format!(
            "{} is not one of the homogeneous varieties",
            v.label()
        )));
    }
    check_even(v.param_dim())?;
    let mut k = measure_transform(v)?;
    k.values_mut()[0] -= 1.0;
    Ok(k)
}

/// K for the cone C over F_q^{d+1}.
pub fn k_kernel(field: std::sync::Arc<FiniteField>, d: usize) -> Result<GridFunction<Counting>> {
    check_even(d)?;
    decay_kernel(&Variety::homogeneous_cone(field, d)?)
}

/// Closed-form transform of the cone measure on every point of F_q^{d+1}.
pub fn cone_fourier_closed_grid(space: &Space) -> Result<GridFunction<Counting>> {
    let d = space.dim() - 1;
    let f = space.field();
    let values = (0..space.len())
        .map(|i| cone_fourier_closed(f, d, &space.coords(i)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::from_values(space.clone(), values)
}
