//! Additive and quadratic characters of F_q and the exponential sums built on them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// Tolerance used by [`FiniteField::character_orthogonality_check`].
pub const ORTHOGONALITY_TOL: f64 = 1e-12;

/// Values of the additive character chi(a) = exp(2 pi i Tr(c a) / p) and the
/// quadratic character eta, for a fixed twist c (c = 1 is canonical).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    twist: FieldElement,
    chi: Vec<Complex64>,
    eta: Vec<i8>,
}

impl CharacterTable {
    pub(super) fn placeholder() -> Self {
        Self {
            twist: FieldElement::ONE,
            chi: Vec::new(),
            eta: Vec::new(),
        }
    }

    pub(super) fn build(field: &FiniteField, twist: FieldElement) -> Self {
        let p = field.characteristic() as f64;
        let chi = field
            .elements()
            .map(|a| {
                let t = field.trace(field.mul(twist, a)).0 as f64;
                Complex64::from_polar(1.0, 2.0 * PI * t / p)
            })
            .collect();
        let eta = field.elements().map(|a| field.quadratic_character(a) as i8).collect();
        Self { twist, chi, eta }
    }

    pub fn twist(&self) -> FieldElement {
        self.twist
    }

    #[inline]
    pub fn chi(&self, a: FieldElement) -> Complex64 {
        self.chi[a.index()]
    }

    #[inline]
    pub fn eta(&self, a: FieldElement) -> i32 {
        self.eta[a.index()] as i32
    }
}

impl FiniteField {
    /// G_a = sum over s != 0 of eta(s) chi(a s).
    pub fn gauss_sum(&self, a: FieldElement) -> Complex64 {
        self.nonzero()
            .map(|s| self.chi(self.mul(a, s)) * self.eta(s) as f64)
            .sum()
    }

    /// Sum over s != 0 of eta(s) chi(a / s); same modulus as G_a.
    pub fn gauss_sum_reciprocal(&self, a: FieldElement) -> Complex64 {
        self.nonzero()
            .map(|s| self.chi(self.div(a, s)) * self.eta(s) as f64)
            .sum()
    }

    /// Sum over s of chi(a s^2 + b s), evaluated by completing the square:
    /// G_1 eta(a) chi(b^2 / (-4a)).
    pub fn weil_square_sum(&self, a: FieldElement, b: FieldElement) -> Result<Complex64> {
        let four_a = self.mul(self.from_int(4), a);
        let inv = self.inv(self.neg(four_a)).ok_or(Error::ZeroLeadingCoefficient)?;
        let phase = self.chi(self.mul(self.square(b), inv));
        Ok(self.gauss_sum(FieldElement::ONE) * self.eta(a) as f64 * phase)
    }

    /// Checks the orthogonality relations for chi over F_q and for eta over
    /// F_q^* for every parameter `a`.
    ///
    /// With eta(0) = 0 the `a = 0` branch of the multiplicative relation is
    /// taken for the principal character eta^2, whose sum over F_q^* is q - 1.
    pub fn character_orthogonality_check(&self) -> bool {
        let q = self.order() as f64;
        let additive = self.elements().all(|a| {
            let sum: Complex64 = self.elements().map(|s| self.chi(self.mul(a, s))).sum();
            let expected = if a.is_zero() { q } else { 0.0 };
            (sum - expected).norm() <= ORTHOGONALITY_TOL * q
        });
        let multiplicative = self.elements().all(|a| {
            let sum: i64 = if a.is_zero() {
                self.nonzero().map(|s| (self.eta(s) * self.eta(s)) as i64).sum()
            } else {
                self.nonzero().map(|s| self.eta(self.mul(a, s)) as i64).sum()
            };
            let expected = if a.is_zero() { self.order() as i64 - 1 } else { 0 };
            sum == expected
        });
        additive && multiplicative
    }
}
