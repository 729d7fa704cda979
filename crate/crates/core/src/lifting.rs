//! Lifting test functions from F_q^d to F_q^{d+1}.
//!
//! A d-coordinate lay function (invariant under nonzero scaling of its last
//! coordinate) lifts to
//!
//! ```text
//! G_g(m, l) = g(m)/q sum_{s != 0} chi(l s) = g(m) (q-1)/q  if l = 0
//!                                          = -g(m)/q       if l != 0
//! ```
//!
//! whose transform is `G_g^(x', x_d, s) = g^(x', x_d s)` for s != 0 and 0 at
//! s = 0. A function homogeneous of degree zero lifts to `g(m) [m_{d+1} = 0]`,
//! whose transform is `g^(x)` for every value of the last dual variable.
//! These carry restriction estimates on C and H_j down to P and S_j.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::fourier;
use crate::space::{rng_from_seed, sample, Counting, Distribution, GridFunction, Space};
use crate::varieties::{sample_on, Variety};

/// Tolerance for the scaling-invariance predicates, relative to max |g|.
pub const CLASS_TOL: f64 = 1e-12;
/// Tolerance for the Fourier-side relations and the transfer identity.
pub const TRANSFER_TOL: f64 = 1e-10;
/// Relative tolerance for the L^alpha bracket formula.
pub const BRACKET_TOL: f64 = 1e-12;

/// alpha = (2d+4)/(d+4).
pub fn alpha(d: usize) -> f64 {
    (2 * d + 4) as f64 / (d + 4) as f64
}

/// beta = (2d+4)/d, the dual exponent of alpha.
pub fn beta(d: usize) -> f64 {
    (2 * d + 4) as f64 / d as f64
}

fn check_even(d: usize) -> Result<()> {
    if d % 2 == 1 {
        Err(Error::OddDimension(d))
    } else {
        Ok(())
    }
}

fn tolerance(g: &GridFunction<Counting>) -> f64 {
    CLASS_TOL * g.values().iter().map(|v| v.norm()).fold(1.0, f64::max)
}

/// Test-function classes cut out by scaling invariance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    All,
    Lay,
    Hom,
}

impl FunctionClass {
    pub fn label(self) -> &'static str {
        match self {
            FunctionClass::All => "all",
            FunctionClass::Lay => "lay",
            FunctionClass::Hom => "hom",
        }
    }

    pub fn contains(self, g: &GridFunction<Counting>) -> bool {
        match self {
            FunctionClass::All => true,
            FunctionClass::Lay => is_d_lay(g),
            FunctionClass::Hom => is_homogeneous_zero(g),
        }
    }

    /// Orthogonal projection onto the class: averages over scaling orbits.
    pub fn project(self, g: &GridFunction<Counting>) -> GridFunction<Counting> {
        match self {
            FunctionClass::All => g.clone(),
            FunctionClass::Lay => project_lay(g),
            FunctionClass::Hom => project_hom(g),
        }
    }

    /// Random member of the class with one Gaussian value per orbit.
    pub fn random(self, space: &Space, seed: u64) -> GridFunction<Counting> {
        match self {
            FunctionClass::All => crate::space::random_function(space.clone(), seed, Distribution::ComplexGaussian),
            FunctionClass::Lay => random_lay_on(space, seed),
            FunctionClass::Hom => random_hom_on(space, seed),
        }
    }
}

impl std::str::FromStr for FunctionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(FunctionClass::All),
            "lay" => Ok(FunctionClass::Lay),
            "hom" => Ok(FunctionClass::Hom),
            other => Err(Error::Parse(format!("unknown function class {other:?}"))),
        }
    }
}

/// Orbit representative under m_d -> s m_d: the last coordinate becomes 0 or 1.
pub fn lay_representative(space: &Space, idx: usize) -> usize {
    let top = space.len() / space.q();
    let (rest, last) = (idx % top, idx / top);
    if last == 0 {
        rest
    } else {
        rest + top
    }
}

/// Orbit representative under m -> s m: the first nonzero coordinate becomes 1.
pub fn hom_representative(space: &Space, idx: usize) -> usize {
    let coords = space.coords(idx);
    match coords.iter().find(|c| !c.is_zero()) {
        None => idx,
        Some(&lead) => {
            let f = space.field();
            let s = f.inv(lead).expect("nonzero");
            space.scale(s, idx)
        }
    }
}

/// Number of orbits of scaling in the last coordinate: 2 q^{d-1}.
pub fn lay_orbit_count(q: usize, d: usize) -> usize {
    2 * q.pow(d as u32 - 1)
}

/// Number of punctured lines through 0 plus the origin: (q^d - 1)/(q - 1) + 1.
pub fn hom_orbit_count(q: usize, d: usize) -> usize {
    (q.pow(d as u32) - 1) / (q - 1) + 1
}

/// Whether g(m', m_d) = g(m', s m_d) for all points and all s != 0.
pub fn is_d_lay(g: &GridFunction<Counting>) -> bool {
    let space = g.space();
    let f = space.field();
    let top = space.len() / space.q();
    let tol = tolerance(g);
    let v = g.values();
    (0..space.len()).all(|idx| {
        let (rest, last) = (idx % top, FieldElement((idx / top) as u32));
        f.nonzero().all(|s| {
            let scaled = rest + f.mul(s, last).index() * top;
            (v[idx] - v[scaled]).norm() <= tol
        })
    })
}

/// Whether g(s m) = g(m) for all points and all s != 0.
pub fn is_homogeneous_zero(g: &GridFunction<Counting>) -> bool {
    let space = g.space();
    let f = space.field();
    let tol = tolerance(g);
    let v = g.values();
    (0..space.len()).all(|idx| f.nonzero().all(|s| (v[idx] - v[space.scale(s, idx)]).norm() <= tol))
}

fn project_by(g: &GridFunction<Counting>, rep: impl Fn(usize) -> usize) -> GridFunction<Counting> {
    let n = g.space().len();
    let reps: Vec<usize> = (0..n).map(&rep).collect();
    let mut sums = vec![Complex64::new(0.0, 0.0); n];
    let mut counts = vec![0usize; n];
    for (idx, &r) in reps.iter().enumerate() {
        sums[r] += g.values()[idx];
        counts[r] += 1;
    }
    GridFunction::from_fn(g.space().clone(), |idx| {
        let r = reps[idx];
        sums[r] / counts[r] as f64
    })
}

/// Average over the orbits of m_d -> s m_d.
pub fn project_lay(g: &GridFunction<Counting>) -> GridFunction<Counting> {
    let space = g.space().clone();
    project_by(g, |idx| lay_representative(&space, idx))
}

/// Average over punctured lines through 0.
pub fn project_hom(g: &GridFunction<Counting>) -> GridFunction<Counting> {
    let space = g.space().clone();
    project_by(g, |idx| hom_representative(&space, idx))
}

fn random_by_orbit(space: &Space, seed: u64, rep: impl Fn(usize) -> usize) -> GridFunction<Counting> {
    let mut rng = rng_from_seed(seed);
    let mut values = vec![Complex64::new(0.0, 0.0); space.len()];
    let reps: Vec<usize> = (0..space.len()).map(rep).collect();
    for (idx, &r) in reps.iter().enumerate() {
        if r == idx {
            values[idx] = sample(&mut rng, Distribution::ComplexGaussian);
        }
    }
    for (idx, &r) in reps.iter().enumerate() {
        values[idx] = values[r];
    }
    GridFunction::from_values(space.clone(), values).expect("length matches")
}

fn random_lay_on(space: &Space, seed: u64) -> GridFunction<Counting> {
    random_by_orbit(space, seed, |idx| lay_representative(space, idx))
}

fn random_hom_on(space: &Space, seed: u64) -> GridFunction<Counting> {
    random_by_orbit(space, seed, |idx| hom_representative(space, idx))
}

/// Random lay function with an independent Gaussian value per orbit.
pub fn random_lay(field: Arc<FiniteField>, d: usize, seed: u64) -> Result<GridFunction<Counting>> {
    Ok(random_lay_on(&Space::new(field, d)?, seed))
}

/// Random degree-zero homogeneous function, one Gaussian value per orbit.
pub fn random_hom(field: Arc<FiniteField>, d: usize, seed: u64) -> Result<GridFunction<Counting>> {
    Ok(random_hom_on(&Space::new(field, d)?, seed))
}

/// G_g on F_q^{d+1} for a lay g on F_q^d.
pub fn lift_lay(g: &GridFunction<Counting>) -> Result<GridFunction<Counting>> {
    if !is_d_lay(g) {
        return Err(Error::NotLayFunction);
    }
    let lifted = g.space().lifted()?;
    let q = g.space().q() as f64;
    let n = g.space().len();
    let at_zero = (q - 1.0) / q;
    let elsewhere = -1.0 / q;
    Ok(GridFunction::from_fn(lifted, |idx| {
        let (m, l) = (idx % n, idx / n);
        g.values()[m] * if l == 0 { at_zero } else { elsewhere }
    }))
}

/// G_g(m, m_{d+1}) = g(m) [m_{d+1} = 0] for a degree-zero homogeneous g.
pub fn lift_hom(g: &GridFunction<Counting>) -> Result<GridFunction<Counting>> {
    if !is_homogeneous_zero(g) {
        return Err(Error::NotHomogeneousZero);
    }
    let lifted = g.space().lifted()?;
    let n = g.space().len();
    Ok(GridFunction::from_fn(lifted, |idx| {
        if idx < n {
            g.values()[idx]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// max over (x', x_d, s) of |G^(x', x_d, s) - [s != 0] g^(x', x_d s)|.
pub fn lay_fourier_deviation(g: &GridFunction<Counting>, lifted: &GridFunction<Counting>) -> Result<f64> {
    let (gh, big) = (fourier::hat(g)?, fourier::hat(lifted)?);
    let space = g.space();
    let f = space.field();
    let n = space.len();
    let top = n / space.q();
    Ok((0..big.space().len())
        .map(|idx| {
            let (x, s) = (idx % n, FieldElement((idx / n) as u32));
            let expected = if s.is_zero() {
                Complex64::new(0.0, 0.0)
            } else {
                let (rest, last) = (x % top, FieldElement((x / top) as u32));
                gh.values()[rest + f.mul(last, s).index() * top]
            };
            (big.values()[idx] - expected).norm()
        })
        .fold(0.0, f64::max))
}

/// max over (x, t) of |G^(x, t) - g^(x)|.
pub fn hom_fourier_deviation(g: &GridFunction<Counting>, lifted: &GridFunction<Counting>) -> Result<f64> {
    let (gh, big) = (fourier::hat(g)?, fourier::hat(lifted)?);
    let n = g.space().len();
    Ok(big
        .values()
        .iter()
        .enumerate()
        .map(|(idx, v)| (v - gh.values()[idx % n]).norm())
        .fold(0.0, f64::max))
}

/// ((q-1)/q)^alpha + (q-1)/q^alpha, the exact ratio ||G_g||_alpha^alpha / ||g||_alpha^alpha.
pub fn lay_bracket(q: f64, alpha: f64) -> f64 {
    ((q - 1.0) / q).powf(alpha) + (q - 1.0) / q.powf(alpha)
}

/// Tracked constant for lay g on P:
/// sqrt(q/(q-1)) * sqrt(2) * 2^{(d+4)/(2d+4)}.
pub fn lay_bound(q: f64, d: usize) -> f64 {
    (q / (q - 1.0)).sqrt() * 2f64.sqrt() * 2f64.powf(1.0 / alpha(d))
}

/// q^d / (|S_j| (q-1)).
pub fn hom_prefactor(q: f64, d: usize, sphere_size: usize) -> f64 {
    q.powi(d as i32) / (sphere_size as f64 * (q - 1.0))
}

/// Tracked constant for degree-zero homogeneous g on S_j: sqrt(2 q^d / (|S_j|(q-1))).
pub fn hom_bound(q: f64, d: usize, sphere_size: usize) -> f64 {
    (2.0 * hom_prefactor(q, d, sphere_size)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftKind {
    Lay,
    Hom,
}

/// Norms on both sides of a lift and the checks tying them together.
#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub kind: LiftKind,
    pub q: u32,
    pub d: usize,
    pub j: Option<u32>,
    pub seed: Option<u64>,
    pub alpha: f64,
    /// ||g||_{L^alpha(dm)}
    pub source_alpha_norm: f64,
    /// ||g^||_{L^2(V, d sigma)} with V = P or S_j
    pub source_restriction_norm: f64,
    /// ||G_g||_{L^alpha(dm)}
    pub lifted_alpha_norm: f64,
    /// ||G_g^||_{L^2(W, d sigma_W)} with W = C or H_j
    pub lifted_restriction_norm: f64,
    /// ||G_g||_alpha^alpha / ||g||_alpha^alpha
    pub alpha_power_ratio: Option<f64>,
    pub predicted_alpha_power_ratio: f64,
    /// ||G_g^||^2_W / ||g^||^2_V
    pub transfer_ratio: Option<f64>,
    /// (q-1)/q for lay (exact), 1/prefactor for hom (lower bound)
    pub transfer_constant: f64,
    pub fourier_deviation: f64,
    /// ||g^||_{L^2(V)} / ||g||_{L^alpha}
    pub restriction_ratio: Option<f64>,
    pub bound: f64,
    pub constant_chain: String,
    pub passed: bool,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

fn within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// P in F_q^d and C in F_q^{d+1}, built once for repeated lay checks.
#[derive(Clone, Debug)]
pub struct LayTransfer {
    paraboloid: Variety,
    cone: Variety,
}

impl LayTransfer {
    pub fn new(field: Arc<FiniteField>, d: usize) -> Result<Self> {
        check_even(d)?;
        Ok(Self {
            paraboloid: Variety::paraboloid(field.clone(), d)?,
            cone: Variety::homogeneous_cone(field, d)?,
        })
    }

    pub fn space(&self) -> &Space {
        self.paraboloid.space()
    }

    pub fn check(&self, g: &GridFunction<Counting>, seed: Option<u64>) -> Result<LiftReport> {
        let space = self.paraboloid.space();
        space.ensure_same(g.space())?;
        let d = space.dim();
        let q = space.q() as f64;
        let a = alpha(d);
        let lifted = lift_lay(g)?;
        let src = sample_on(&fourier::hat(g)?, &self.paraboloid).norm(2.0)?;
        let big = sample_on(&fourier::hat(&lifted)?, &self.cone).norm(2.0)?;
        let (ga, gla) = (g.lp_norm(a)?, lifted.lp_norm(a)?);
        let dev = lay_fourier_deviation(g, &lifted)?;
        let bracket = lay_bracket(q, a);
        let constant = (q - 1.0) / q;
        let bound = lay_bound(q, d);
        let passed = dev <= TRANSFER_TOL
            && within(big * big, constant * src * src, TRANSFER_TOL)
            && within(gla.powf(a), bracket * ga.powf(a), BRACKET_TOL)
            && bracket <= 2.0
            && src <= bound * ga * (1.0 + TRANSFER_TOL);
        Ok(LiftReport {
            kind: LiftKind::Lay,
            q: space.field().order(),
            d,
            j: None,
            seed,
            alpha: a,
            source_alpha_norm: ga,
            source_restriction_norm: src,
            lifted_alpha_norm: gla,
            lifted_restriction_norm: big,
            alpha_power_ratio: ratio(gla.powf(a), ga.powf(a)),
            predicted_alpha_power_ratio: bracket,
            transfer_ratio: ratio(big * big, src * src),
            transfer_constant: constant,
            fourier_deviation: dev,
            restriction_ratio: ratio(src, ga),
            bound,
            constant_chain: "||g^||_P^2 = q/(q-1) ||G^||_C^2 <= q/(q-1) 2 ||G||_alpha^2 <= q/(q-1) 2 (2 ||g||_alpha^alpha)^(2/alpha)"
                .into(),
            passed,
        })
    }
}

/// S_j in F_q^d and H_j in F_q^{d+1}, built once for repeated hom checks.
#[derive(Clone, Debug)]
pub struct HomTransfer {
    sphere: Variety,
    hsphere: Variety,
    j: FieldElement,
}

impl HomTransfer {
    pub fn new(field: Arc<FiniteField>, d: usize, j: FieldElement) -> Result<Self> {
        check_even(d)?;
        Ok(Self {
            sphere: Variety::sphere(field.clone(), d, j)?,
            hsphere: Variety::homogeneous_sphere(field, d, j)?,
            j,
        })
    }

    pub fn space(&self) -> &Space {
        self.sphere.space()
    }

    pub fn sphere(&self) -> &Variety {
        &self.sphere
    }

    pub fn check(&self, g: &GridFunction<Counting>, seed: Option<u64>) -> Result<LiftReport> {
        let space = self.sphere.space();
        space.ensure_same(g.space())?;
        let d = space.dim();
        let q = space.q() as f64;
        let a = alpha(d);
        let lifted = lift_hom(g)?;
        let src = sample_on(&fourier::hat(g)?, &self.sphere).norm(2.0)?;
        let big = sample_on(&fourier::hat(&lifted)?, &self.hsphere).norm(2.0)?;
        let (ga, gla) = (g.lp_norm(a)?, lifted.lp_norm(a)?);
        let dev = hom_fourier_deviation(g, &lifted)?;
        let prefactor = hom_prefactor(q, d, self.sphere.cardinality());
        let bound = hom_bound(q, d, self.sphere.cardinality());
        let slack_scale = (src * src).max(1.0);
        let passed = dev <= TRANSFER_TOL
            && within(gla, ga, BRACKET_TOL)
            && src * src <= prefactor * big * big + TRANSFER_TOL * slack_scale
            && src <= bound * ga * (1.0 + TRANSFER_TOL);
        Ok(LiftReport {
            kind: LiftKind::Hom,
            q: space.field().order(),
            d,
            j: Some(self.j.0),
            seed,
            alpha: a,
            source_alpha_norm: ga,
            source_restriction_norm: src,
            lifted_alpha_norm: gla,
            lifted_restriction_norm: big,
            alpha_power_ratio: ratio(gla.powf(a), ga.powf(a)),
            predicted_alpha_power_ratio: 1.0,
            transfer_ratio: ratio(big * big, src * src),
            transfer_constant: 1.0 / prefactor,
            fourier_deviation: dev,
            restriction_ratio: ratio(src, ga),
            bound,
            constant_chain: "||g^||_S^2 <= q^d/(|S_j|(q-1)) ||G^||_H^2 <= q^d/(|S_j|(q-1)) 2 ||g||_alpha^2".into(),
            passed,
        })
    }
}

/// Lay lift of g checked against P and C.
pub fn lay_transfer_check(g: &GridFunction<Counting>) -> Result<LiftReport> {
    LayTransfer::new(g.field().clone(), g.dim())?.check(g, None)
}

/// Homogeneous lift of g checked against S_j and H_j.
pub fn hom_transfer_check(g: &GridFunction<Counting>, j: FieldElement) -> Result<LiftReport> {
    HomTransfer::new(g.field().clone(), g.dim(), j)?.check(g, None)
}
