//! Points of F_q^d and complex functions on them.
//!
//! A point is stored by its little-endian base-q index
//! `idx = c_0 + c_1 q + ... + c_{d-1} q^{d-1}`. With this layout a function on
//! F_q^d embeds into F_q^{d+1} as the block where the last coordinate is zero.
//!
//! Functions carry their measure as a type parameter: [`Counting`] for the
//! physical space (F_q^d, dm) and [`Normalized`] for the dual space
//! (F_q^d, dx) with total mass one.

use std::fmt;
use std::io::{BufRead, Write};
use std::marker::PhantomData;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

/// Largest grid a [`Space`] will index.
pub const MAX_POINTS: usize = 1 << 26;

/// Marker trait for the two measure conventions.
pub trait Measure: Copy + Clone + fmt::Debug + Send + Sync + 'static {
    const TAG: &'static str;
    /// Mass of a single point in F_q^d.
    fn point_mass(q: usize, dim: usize) -> f64;
}

/// Counting measure dm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counting;

/// Normalized counting measure dx.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalized;

impl Measure for Counting {
    const TAG: &'static str = "dm";
    fn point_mass(_q: usize, _dim: usize) -> f64 {
        1.0
    }
}

impl Measure for Normalized {
    const TAG: &'static str = "dx";
    fn point_mass(q: usize, dim: usize) -> f64 {
        (q as f64).powi(-(dim as i32))
    }
}

/// The vector space F_q^d with its point indexing.
#[derive(Clone, Debug)]
pub struct Space {
    field: Arc<FiniteField>,
    dim: usize,
    len: usize,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Space {
    pub fn new(field: Arc<FiniteField>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let len = (field.q() as u64)
            .checked_pow(dim as u32)
            .filter(|&n| n <= MAX_POINTS as u64)
            .ok_or(Error::TooLarge {
                size: (field.q() as u64).saturating_pow(dim as u32),
                limit: MAX_POINTS as u64,
            })? as usize;
        Ok(Self { field, dim, len })
    }

    #[inline]
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.q()
    }

    /// Number of points, q^d.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The space one dimension up, F_q^{d+1}.
    pub fn lifted(&self) -> Result<Space> {
        Space::new(self.field.clone(), self.dim + 1)
    }

    /// Writes the coordinates of `idx` into `out` (length d).
    #[inline]
    pub fn decode_into(&self, mut idx: usize, out: &mut [FieldElement]) {
        let q = self.q();
        for c in out.iter_mut() {
            *c = FieldElement((idx % q) as u32);
            idx /= q;
        }
    }

    pub fn coords(&self, idx: usize) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; self.dim];
        self.decode_into(idx, &mut out);
        out
    }

    pub fn index(&self, coords: &[FieldElement]) -> usize {
        debug_assert_eq!(coords.len(), self.dim);
        let q = self.q();
        coords.iter().rev().fold(0, |acc, c| acc * q + c.index())
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    /// Sum of the squares of `coords`.
    pub fn sum_of_squares(&self, coords: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        coords
            .iter()
            .fold(FieldElement::ZERO, |acc, &x| f.add(acc, f.square(x)))
    }

    /// Index of `s * m`.
    pub fn scale(&self, s: FieldElement, idx: usize) -> usize {
        let scaled: Vec<_> = self.coords(idx).into_iter().map(|c| self.field.mul(s, c)).collect();
        self.index(&scaled)
    }

    pub fn add_points(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<_> = ca.iter().zip(&cb).map(|(&x, &y)| self.field.add(x, y)).collect();
        self.index(&sum)
    }

    pub fn sub_points(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let diff: Vec<_> = ca.iter().zip(&cb).map(|(&x, &y)| self.field.sub(x, y)).collect();
        self.index(&diff)
    }

    pub(crate) fn ensure_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.q(),
                self.dim,
                other.q(),
                other.dim
            )))
        }
    }
}

/// Dense complex function on F_q^d under measure `M`.
#[derive(Clone, Debug)]
pub struct GridFunction<M: Measure> {
    space: Space,
    values: Vec<Complex64>,
    _measure: PhantomData<M>,
}

impl<M: Measure> PartialEq for GridFunction<M> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.values == other.values
    }
}

impl<M: Measure> GridFunction<M> {
    pub fn zeros(space: Space) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); space.len()];
        Self::from_values(space, values).expect("length matches")
    }

    pub fn from_values(space: Space, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                space.len()
            )));
        }
        Ok(Self {
            space,
            values,
            _measure: PhantomData,
        })
    }

    pub fn from_fn(space: Space, f: impl Fn(usize) -> Complex64) -> Self {
        let values = (0..space.len()).map(f).collect();
        Self::from_values(space, values).expect("length matches")
    }

    pub fn constant(space: Space, c: Complex64) -> Self {
        Self::from_fn(space, |_| c)
    }

    /// Indicator of a single point.
    pub fn delta(space: Space, idx: usize) -> Self {
        let mut g = Self::zeros(space);
        g.values[idx] = Complex64::new(1.0, 0.0);
        g
    }

    #[inline]
    pub fn space(&self) -> &Space {
        &self.space
    }

    #[inline]
    pub fn field(&self) -> &Arc<FiniteField> {
        self.space.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn measure_tag(&self) -> &'static str {
        M::TAG
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
            _measure: PhantomData,
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm_sqr() == 0.0)
    }

    /// L^p norm under the measure `M`. `p = f64::INFINITY` gives the max modulus.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm_weighted(&self.values, p, M::point_mass(self.space.q(), self.space.dim()))
    }

    /// Largest pointwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Writes the columnar text format: a header line followed by one
    /// `index re im` line per point.
    pub fn write_columns<W: Write>(&self, mut w: W) -> Result<()> {
        let f = self.field();
        writeln!(
            w,
            "# ffrl-grid p={} n={} q={} d={} measure={}",
            f.characteristic(),
            f.degree(),
            f.order(),
            self.dim(),
            M::TAG
        )?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{} {} {}", i, v.re, v.im)?;
        }
        Ok(())
    }

    /// Reads the columnar format written by [`Self::write_columns`]. The
    /// header must name the same field order and measure.
    pub fn read_columns<R: BufRead>(field: Arc<FiniteField>, r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))??;
        let mut q = None;
        let mut dim = None;
        let mut measure = None;
        for tok in header.trim_start_matches('#').split_whitespace().skip(1) {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token {tok:?}")))?;
            match k {
                "q" => q = v.parse::<u32>().ok(),
                "d" => dim = v.parse::<usize>().ok(),
                "measure" => measure = Some(v.to_string()),
                _ => {}
            }
        }
        let (q, dim, measure) = match (q, dim, measure) {
            (Some(q), Some(d), Some(m)) => (q, d, m),
            _ => return Err(Error::Parse(format!("incomplete header {header:?}"))),
        };
        if measure != M::TAG {
            return Err(Error::WrongMeasureTag {
                expected: M::TAG,
                found: measure,
            });
        }
        if q != field.order() {
            return Err(Error::DimensionMismatch(format!(
                "file is over F_{q}, field is F_{}",
                field.order()
            )));
        }
        let space = Space::new(field, dim)?;
        let mut values = vec![Complex64::new(0.0, 0.0); space.len()];
        let mut seen = vec![false; space.len()];
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse_err = || Error::Parse(format!("bad row {line:?}"));
            let idx: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            let re: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            let im: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            if idx >= values.len() {
                return Err(Error::Parse(format!("index {idx} out of range")));
            }
            values[idx] = Complex64::new(re, im);
            seen[idx] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("missing row for index {missing}")));
        }
        Self::from_values(space, values)
    }
}

/// Weighted L^p norm `(w * sum |v|^p)^(1/p)`, or the max modulus for p = inf.
pub fn lp_norm_weighted(values: &[Complex64], p: f64, weight: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if p.is_infinite() {
        return Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    let sum: f64 = if p == 2.0 {
        values.iter().map(|v| v.norm_sqr()).sum()
    } else if p == 1.0 {
        values.iter().map(|v| v.norm()).sum()
    } else {
        values.iter().map(|v| v.norm().powf(p)).sum()
    };
    Ok((weight * sum).powf(1.0 / p))
}

impl<M: Measure> Add for &GridFunction<M> {
    type Output = GridFunction<M>;
    fn add(self, rhs: Self) -> GridFunction<M> {
        assert_eq!(self.space, rhs.space, "adding functions on different spaces");
        GridFunction {
            space: self.space.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
            _measure: PhantomData,
        }
    }
}

impl<M: Measure> Sub for &GridFunction<M> {
    type Output = GridFunction<M>;
    fn sub(self, rhs: Self) -> GridFunction<M> {
        assert_eq!(self.space, rhs.space, "subtracting functions on different spaces");
        GridFunction {
            space: self.space.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
            _measure: PhantomData,
        }
    }
}

impl<M: Measure> Mul<Complex64> for &GridFunction<M> {
    type Output = GridFunction<M>;
    fn mul(self, c: Complex64) -> GridFunction<M> {
        self.scaled(c)
    }
}

/// Value distributions for [`random_function`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// Real and imaginary parts i.i.d. standard normal.
    ComplexGaussian,
    /// Each value is 1 with the given probability, else 0.
    SparseZeroOne(f64),
    /// Unit-modulus values with uniform phase.
    UniformPhase,
}

/// Deterministic RNG used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn sample(rng: &mut ChaCha8Rng, dist: Distribution) -> Complex64 {
    match dist {
        Distribution::ComplexGaussian => Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
        Distribution::SparseZeroOne(density) => {
            let on = rng.random::<f64>() < density;
            Complex64::new(if on { 1.0 } else { 0.0 }, 0.0)
        }
        Distribution::UniformPhase => Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU),
    }
}

/// Random function on F_q^d under the counting measure, reproducible from `seed`.
pub fn random_function(space: Space, seed: u64, dist: Distribution) -> GridFunction<Counting> {
    let mut rng = rng_from_seed(seed);
    let values = (0..space.len()).map(|_| sample(&mut rng, dist)).collect();
    GridFunction::from_values(space, values).expect("length matches")
}
