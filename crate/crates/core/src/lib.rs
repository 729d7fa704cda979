//! Fourier restriction experiments over finite fields.
//!
//! The crate builds F_q for odd q, the Fourier transform pair between
//! (F_q^d, dm) and (F_q^d, dx), the quadric varieties P, S_j, C and H_j with
//! their normalized surface measures, the Gauss-sum closed forms for
//! (d sigma)^vee, the lifting maps that carry test functions on F_q^d to
//! F_q^{d+1}, and estimators for restriction constants R(p -> r).

pub mod cli;
pub mod closedform;
pub mod constants;
pub mod error;
pub mod field;
pub mod fourier;
pub mod lifting;
pub mod space;
pub mod varieties;

pub use error::{Error, Result};
pub use field::{FieldElement, FiniteField};
pub use num_complex::Complex64;
pub use space::{Counting, GridFunction, Normalized, Space};
