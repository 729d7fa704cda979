//! The inequalities that bound ||G^||_{L^2(W, d sigma)} for W = C or H_j.
//!
//! With K = (d sigma)^vee - delta_0, alpha = (2d+4)/(d+4) and beta its dual:
//!
//! ```text
//! (E1)    ||G * delta_0||_beta <= ||G||_alpha
//! (two)   ||G * K||_2         <= q ||G||_2
//! (infty) ||G * K||_inf       <= q^{-d/2} ||G||_1
//! (E2)    ||G * K||_beta      <= ||G||_alpha
//! (final) ||G^||^2_{L^2(W)}   <= 2 ||G||_alpha^2
//! ```
//!
//! (E2) is Riesz-Thorin between (two) and (infty) at theta = 2/(d+2), where
//! the powers of q cancel.

use num_complex::Complex64;
use serde::Serialize;

use crate::closedform::decay_kernel;
use crate::error::{Error, Result};
use crate::fourier;
use crate::lifting::{alpha, beta};
use crate::space::{Counting, GridFunction, Normalized};
use crate::varieties::{sample_on, Variety};

/// Relative slack allowed on every inequality.
pub const CHAIN_TOL: f64 = 1e-9;

/// One measured inequality `lhs <= rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct Inequality {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Inequality {
    fn new(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + CHAIN_TOL) + f64::EPSILON,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub variety: String,
    pub q: u32,
    pub d: usize,
    pub checks: Vec<Inequality>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Kernel data for one homogeneous variety, reused across test functions.
#[derive(Clone, Debug)]
pub struct SteinTomas<'a> {
    variety: &'a Variety,
    kernel_hat: GridFunction<Normalized>,
}

impl<'a> SteinTomas<'a> {
    pub fn new(variety: &'a Variety) -> Result<Self> {
        let k = decay_kernel(variety)?;
        Ok(Self {
            variety,
            kernel_hat: fourier::hat(&k)?,
        })
    }

    pub fn check(&self, g: &GridFunction<Counting>) -> Result<ChainReport> {
        let v = self.variety;
        v.space().ensure_same(g.space())?;
        if g.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let d = v.param_dim();
        let q = v.field().order() as f64;
        let (a, b) = (alpha(d), beta(d));
        let gh = fourier::hat(g)?;
        let prod: Vec<Complex64> = gh
            .values()
            .iter()
            .zip(self.kernel_hat.values())
            .map(|(x, y)| x * y)
            .collect();
        let gk = fourier::inv(&GridFunction::from_values(g.space().clone(), prod)?)?;
        let ga = g.lp_norm(a)?;
        let restricted = sample_on(&gh, v).norm(2.0)?;
        let checks = vec![
            Inequality::new("E1", g.lp_norm(b)?, ga),
            Inequality::new("two", gk.lp_norm(2.0)?, q * g.lp_norm(2.0)?),
            Inequality::new(
                "infty",
                gk.lp_norm(f64::INFINITY)?,
                q.powf(-(d as f64) / 2.0) * g.lp_norm(1.0)?,
            ),
            Inequality::new("E2", gk.lp_norm(b)?, ga),
            Inequality::new("final", restricted * restricted, 2.0 * ga * ga),
        ];
        Ok(ChainReport {
            variety: v.label(),
            q: v.field().order(),
            d,
            checks,
        })
    }
}

/// Runs all five inequalities for G against the homogeneous variety `w`.
pub fn stein_tomas_chain_check(g: &GridFunction<Counting>, w: &Variety) -> Result<ChainReport> {
    SteinTomas::new(w)?.check(g)
}
