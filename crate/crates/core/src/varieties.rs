//! Quadric varieties in F_q^d and F_q^{d+1}, their surface measures, and the
//! restriction / extension operators attached to them.
//!
//! Every variety is built by enumerating its ambient space and keeping the
//! points that satisfy the defining equation, so the equation is the only
//! description that has to be trusted.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::fourier;
use crate::space::{lp_norm_weighted, Counting, GridFunction, Normalized, Space};

/// Which set a [`Variety`] is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyKind {
    /// x_1^2 + ... + x_{d-1}^2 = x_d in F_q^d.
    Paraboloid,
    /// x_1^2 + ... + x_d^2 = j in F_q^d, j != 0.
    Sphere { radius: u32 },
    /// x_1^2 + ... + x_{d-1}^2 = x_d x_{d+1} in F_q^{d+1}.
    HomogeneousCone,
    /// x_1^2 + ... + x_d^2 = j x_{d+1}^2 in F_q^{d+1}, j != 0.
    HomogeneousSphere { radius: u32 },
    /// base + span(directions).
    AffineSubspace { base: Vec<u32>, directions: Vec<Vec<u32>> },
    /// All of F_q^d.
    WholeSpace,
}

impl VarietyKind {
    pub fn label(&self) -> String {
        match self {
            VarietyKind::Paraboloid => "paraboloid".into(),
            VarietyKind::Sphere { radius } => format!("sphere(j={radius})"),
            VarietyKind::HomogeneousCone => "cone".into(),
            VarietyKind::HomogeneousSphere { radius } => format!("hsphere(j={radius})"),
            VarietyKind::AffineSubspace { directions, .. } => {
                format!("affine(dim={})", directions.len())
            }
            VarietyKind::WholeSpace => "whole".into(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(
            self,
            VarietyKind::HomogeneousCone | VarietyKind::HomogeneousSphere { .. }
        )
    }
}

/// Extremal affine subspaces are built inside one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceHost {
    Paraboloid,
    Sphere(FieldElement),
}

/// A point set in F_q^n with its normalized surface measure.
#[derive(Clone, Debug)]
pub struct Variety {
    space: Space,
    kind: VarietyKind,
    points: Vec<usize>,
    members: Vec<bool>,
}

/// JSON summary of a variety.
#[derive(Clone, Debug, Serialize)]
pub struct VarietyDescriptor {
    pub label: String,
    pub q: u32,
    pub d: usize,
    pub ambient_dim: usize,
    pub cardinality: usize,
    pub sample_points: Vec<Vec<u32>>,
}

fn satisfies(space: &Space, kind: &VarietyKind, x: &[FieldElement]) -> bool {
    let f = space.field();
    let n = x.len();
    match kind {
        VarietyKind::Paraboloid => space.sum_of_squares(&x[..n - 1]) == x[n - 1],
        VarietyKind::Sphere { radius } => space.sum_of_squares(x) == FieldElement(*radius),
        VarietyKind::HomogeneousCone => space.sum_of_squares(&x[..n - 2]) == f.mul(x[n - 2], x[n - 1]),
        VarietyKind::HomogeneousSphere { radius } => {
            space.sum_of_squares(&x[..n - 1]) == f.mul(FieldElement(*radius), f.square(x[n - 1]))
        }
        VarietyKind::AffineSubspace { .. } | VarietyKind::WholeSpace => true,
    }
}

impl Variety {
    fn enumerate(space: Space, kind: VarietyKind) -> Self {
        let dim = space.dim();
        let points: Vec<usize> = (0..space.len())
            .into_par_iter()
            .map_init(
                || vec![FieldElement::ZERO; dim],
                |buf, idx| {
                    space.decode_into(idx, buf);
                    satisfies(&space, &kind, buf).then_some(idx)
                },
            )
            .flatten()
            .collect();
        Self::from_points(space, kind, points)
    }

    fn from_points(space: Space, kind: VarietyKind, mut points: Vec<usize>) -> Self {
        points.sort_unstable();
        points.dedup();
        let mut members = vec![false; space.len()];
        for &p in &points {
            members[p] = true;
        }
        Self {
            space,
            kind,
            points,
            members,
        }
    }

    /// P in F_q^d, d >= 2.
    pub fn paraboloid(field: Arc<FiniteField>, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self::enumerate(Space::new(field, d)?, VarietyKind::Paraboloid))
    }

    /// S_j in F_q^d.
    pub fn sphere(field: Arc<FiniteField>, d: usize, j: FieldElement) -> Result<Self> {
        if j.is_zero() {
            return Err(Error::ZeroRadius);
        }
        Ok(Self::enumerate(
            Space::new(field, d)?,
            VarietyKind::Sphere { radius: j.0 },
        ))
    }

    /// C in F_q^{d+1}, d >= 2.
    pub fn homogeneous_cone(field: Arc<FiniteField>, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self::enumerate(Space::new(field, d + 1)?, VarietyKind::HomogeneousCone))
    }

    /// H_j in F_q^{d+1}.
    pub fn homogeneous_sphere(field: Arc<FiniteField>, d: usize, j: FieldElement) -> Result<Self> {
        if j.is_zero() {
            return Err(Error::ZeroRadius);
        }
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self::enumerate(
            Space::new(field, d + 1)?,
            VarietyKind::HomogeneousSphere { radius: j.0 },
        ))
    }

    /// F_q^d itself; its surface measure is dx.
    pub fn whole_space(field: Arc<FiniteField>, d: usize) -> Result<Self> {
        let space = Space::new(field, d)?;
        let points = (0..space.len()).collect();
        Ok(Self::from_points(space, VarietyKind::WholeSpace, points))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.space.field()
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        self.kind.label()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.dim()
    }

    /// The d the variety was built from: ambient dimension minus one for C
    /// and H_j, the ambient dimension otherwise.
    pub fn param_dim(&self) -> usize {
        if self.kind.is_homogeneous() {
            self.space.dim() - 1
        } else {
            self.space.dim()
        }
    }

    /// Sorted point indices.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn cardinality(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members[idx]
    }

    /// Position of `idx` within [`Self::points`].
    pub fn position(&self, idx: usize) -> Option<usize> {
        self.points.binary_search(&idx).ok()
    }

    /// Re-checks the defining equation on every listed point and the
    /// consistency of the membership bitmap.
    pub fn verify(&self) -> bool {
        let popcount = self.members.iter().filter(|&&m| m).count();
        popcount == self.points.len()
            && self
                .points
                .iter()
                .all(|&p| self.members[p] && satisfies(&self.space, &self.kind, &self.space.coords(p)))
    }

    pub fn surface_measure(&self) -> SurfaceMeasure<'_> {
        SurfaceMeasure { variety: self }
    }

    pub fn descriptor(&self, samples: usize) -> VarietyDescriptor {
        VarietyDescriptor {
            label: self.label(),
            q: self.field().order(),
            d: self.param_dim(),
            ambient_dim: self.ambient_dim(),
            cardinality: self.cardinality(),
            sample_points: self
                .points
                .iter()
                .take(samples)
                .map(|&p| self.space.coords(p).iter().map(|c| c.0).collect())
                .collect(),
        }
    }

    /// Indicator of the variety on its ambient space, under dx.
    pub fn indicator(&self) -> GridFunction<Normalized> {
        GridFunction::from_fn(self.space.clone(), |i| {
            Complex64::new(if self.members[i] { 1.0 } else { 0.0 }, 0.0)
        })
    }
}

/// Normalized surface measure d sigma = (q^n / |V|) V(x) dx.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceMeasure<'a> {
    variety: &'a Variety,
}

impl SurfaceMeasure<'_> {
    /// Density against dx.
    pub fn density(&self) -> f64 {
        self.variety.space.len() as f64 / self.variety.cardinality() as f64
    }

    /// Mass of one point of V, 1/|V|.
    pub fn point_mass(&self) -> f64 {
        1.0 / self.variety.cardinality() as f64
    }

    pub fn total_mass(&self) -> f64 {
        self.density() * self.variety.cardinality() as f64 / self.variety.space.len() as f64
    }

    /// Integral of a function given by its values on the points of V.
    pub fn integrate(&self, values: &[Complex64]) -> Complex64 {
        values.iter().sum::<Complex64>() * self.point_mass()
    }
}

/// Values of a function on the points of a variety, in point order.
#[derive(Clone, Debug)]
pub struct OnVariety<'a> {
    pub variety: &'a Variety,
    pub values: Vec<Complex64>,
}

impl OnVariety<'_> {
    /// L^r(V, d sigma) norm.
    pub fn norm(&self, r: f64) -> Result<f64> {
        lp_norm_weighted(&self.values, r, self.variety.surface_measure().point_mass())
    }

    /// Pairs of point index and value.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.variety.points.iter().copied().zip(self.values.iter().copied())
    }
}

/// `g^` evaluated only on V, directly from the definition (|V| q^n work).
pub fn restrict_hat<'a>(g: &GridFunction<Counting>, v: &'a Variety) -> Result<OnVariety<'a>> {
    g.space().ensure_same(&v.space)?;
    let space = &v.space;
    let f = space.field();
    let (q, dim) = (space.q(), space.dim());
    let values = v
        .points
        .par_iter()
        .map(|&x| {
            let cx = space.coords(x);
            // tables[k][c] = c * x_k
            let tables: Vec<Vec<FieldElement>> = cx
                .iter()
                .map(|&xk| f.elements().map(|c| f.mul(c, xk)).collect())
                .collect();
            let mut digits = vec![0usize; dim];
            let mut acc = Complex64::new(0.0, 0.0);
            for &gm in g.values() {
                let dot = digits
                    .iter()
                    .zip(&tables)
                    .fold(FieldElement::ZERO, |s, (&m, t)| f.add(s, t[m]));
                acc += f.chi(f.neg(dot)) * gm;
                for dgt in digits.iter_mut() {
                    *dgt += 1;
                    if *dgt < q {
                        break;
                    }
                    *dgt = 0;
                }
            }
            acc
        })
        .collect();
    Ok(OnVariety { variety: v, values })
}

/// `g^` on V by sampling the full transform (d q^{n+1} work).
pub fn restrict_hat_via_transform<'a>(g: &GridFunction<Counting>, v: &'a Variety) -> Result<OnVariety<'a>> {
    g.space().ensure_same(&v.space)?;
    let full = fourier::hat(g)?;
    Ok(sample_on(&full, v))
}

/// Restricts a dual-side function to the points of V.
pub fn sample_on<'a>(f: &GridFunction<Normalized>, v: &'a Variety) -> OnVariety<'a> {
    OnVariety {
        variety: v,
        values: v.points.iter().map(|&p| f.values()[p]).collect(),
    }
}

/// `(g d sigma)^vee(m) = |V|^{-1} sum_{x in V} chi(m.x) g(x)`.
pub fn extension(values_on_v: &[Complex64], v: &Variety) -> Result<GridFunction<Counting>> {
    if values_on_v.len() != v.cardinality() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for a variety of {} points",
            values_on_v.len(),
            v.cardinality()
        )));
    }
    let density = v.surface_measure().density();
    let mut dual = GridFunction::<Normalized>::zeros(v.space.clone());
    for (&p, &val) in v.points.iter().zip(values_on_v) {
        dual.values_mut()[p] = val * density;
    }
    fourier::inv(&dual)
}

/// `(d sigma)^vee` on the whole ambient space.
pub fn measure_transform(v: &Variety) -> Result<GridFunction<Counting>> {
    extension(&vec![Complex64::new(1.0, 0.0); v.cardinality()], v)
}

/// Largest affine subspace the construction below places inside P or S_j.
///
/// With i^2 = -1 the vectors e_a + i e_{a+1} over disjoint coordinate pairs
/// span a totally isotropic subspace W of the sum-of-squares form.
/// For P the subspace is (W, 0) with W in the first d - 1 coordinates.
/// For S_j it is a + W with W on the trailing coordinates and `a` the
/// smallest point of S_j supported on the leading ones, so a . W = 0.
/// The size is q^{(d-2)/2} for even d and q^{(d-1)/2} for odd d.
pub fn max_affine_subspace(field: Arc<FiniteField>, d: usize, host: SubspaceHost) -> Result<Variety> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let i = field
        .sqrt_of_minus_one()
        .ok_or(Error::MinusOneNotSquare(field.order()))?;
    let space = Space::new(field.clone(), d)?;
    let pairs = if d.is_multiple_of(2) { (d - 2) / 2 } else { (d - 1) / 2 };
    let (parent, first_pair_coord, base) = match host {
        SubspaceHost::Paraboloid => (VarietyKind::Paraboloid, 0, vec![FieldElement::ZERO; d]),
        SubspaceHost::Sphere(j) => {
            if j.is_zero() {
                return Err(Error::ZeroRadius);
            }
            let free = d - 2 * pairs;
            let kind = VarietyKind::Sphere { radius: j.0 };
            let base = (0..space.len())
                .map(|idx| space.coords(idx))
                .find(|c| c[free..].iter().all(|x| x.is_zero()) && satisfies(&space, &kind, c))
                .ok_or_else(|| {
                    Error::NoBasePointFound(format!(
                        "S_{} in F_{}^{} has no point on the first {} coordinates",
                        j,
                        field.order(),
                        d,
                        free
                    ))
                })?;
            (kind, free, base)
        }
    };
    let directions: Vec<Vec<FieldElement>> = (0..pairs)
        .map(|k| {
            let mut w = vec![FieldElement::ZERO; d];
            w[first_pair_coord + 2 * k] = FieldElement::ONE;
            w[first_pair_coord + 2 * k + 1] = i;
            w
        })
        .collect();

    let q = field.q();
    let count = q.pow(pairs as u32);
    let mut points = Vec::with_capacity(count);
    for t in 0..count {
        let mut x = base.clone();
        let mut rest = t;
        for w in &directions {
            let s = FieldElement((rest % q) as u32);
            rest /= q;
            for (xc, &wc) in x.iter_mut().zip(w) {
                *xc = field.add(*xc, field.mul(s, wc));
            }
        }
        if !satisfies(&space, &parent, &x) {
            return Err(Error::UnsupportedVariety(format!(
                "constructed point {x:?} is not on {}",
                parent.label()
            )));
        }
        points.push(space.index(&x));
    }
    let kind = VarietyKind::AffineSubspace {
        base: base.iter().map(|c| c.0).collect(),
        directions: directions.iter().map(|w| w.iter().map(|c| c.0).collect()).collect(),
    };
    Ok(Variety::from_points(space, kind, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{random_function, Distribution};

    fn field(q: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::from_order(q).unwrap())
    }

    fn fe(k: u32) -> FieldElement {
        FieldElement(k)
    }

    #[test]
    fn parabola_over_f3() {
        let p = Variety::paraboloid(field(3), 2).unwrap();
        let pts: Vec<Vec<u32>> = p
            .points()
            .iter()
            .map(|&i| p.space().coords(i).iter().map(|c| c.0).collect())
            .collect();
        let mut expected = vec![vec![0, 0], vec![1, 1], vec![2, 1]];
        let mut got = pts.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert!(p.verify());
    }

    #[test]
    fn paraboloid_is_a_graph() {
        for (q, d) in [(3, 3), (5, 2), (5, 3), (9, 2)] {
            let p = Variety::paraboloid(field(q), d).unwrap();
            assert_eq!(p.cardinality(), (q as usize).pow(d as u32 - 1));
        }
    }

    #[test]
    fn circles() {
        let s = Variety::sphere(field(3), 2, fe(1)).unwrap();
        assert_eq!(s.cardinality(), 4);
        let ratio = (s.cardinality() * 2) as f64 / 9.0;
        assert!((0.5..=2.0).contains(&ratio));
        assert_eq!(Variety::sphere(field(5), 2, fe(2)).unwrap().cardinality(), 4);
        assert!(matches!(Variety::sphere(field(5), 2, fe(0)), Err(Error::ZeroRadius)));
    }

    #[test]
    fn homogeneous_counts_small() {
        assert_eq!(Variety::homogeneous_cone(field(3), 2).unwrap().cardinality(), 9);
        assert_eq!(
            Variety::homogeneous_sphere(field(3), 2, fe(1)).unwrap().cardinality(),
            9
        );
        assert_eq!(
            Variety::homogeneous_sphere(field(5), 2, fe(1)).unwrap().cardinality(),
            25
        );
        assert_eq!(Variety::homogeneous_cone(field(5), 4).unwrap().cardinality(), 625);
    }

    #[test]
    fn homogeneous_sphere_is_closed_under_scaling() {
        let h = Variety::homogeneous_sphere(field(5), 2, fe(3)).unwrap();
        let s = h.space();
        for &p in h.points() {
            for c in s.field().nonzero() {
                assert!(h.contains(s.scale(c, p)));
            }
        }
    }

    #[test]
    fn surface_measure_has_unit_mass() {
        let v = Variety::sphere(field(7), 3, fe(2)).unwrap();
        assert!((v.surface_measure().total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn affine_subspace_in_paraboloid_f5() {
        let h = max_affine_subspace(field(5), 4, SubspaceHost::Paraboloid).unwrap();
        assert_eq!(h.cardinality(), 5);
        let s = h.space();
        let f = s.field();
        for t in f.elements() {
            let x = [t, f.mul(fe(2), t), fe(0), fe(0)];
            assert!(h.contains(s.index(&x)));
        }
    }

    #[test]
    fn affine_subspace_in_sphere_f5() {
        let f = field(5);
        for j in 1..5 {
            let h = max_affine_subspace(f.clone(), 4, SubspaceHost::Sphere(fe(j))).unwrap();
            assert_eq!(h.cardinality(), 5);
            let sphere = Variety::sphere(f.clone(), 4, fe(j)).unwrap();
            assert!(h.points().iter().all(|&p| sphere.contains(p)));
            match h.kind() {
                VarietyKind::AffineSubspace { base, directions } => {
                    assert_eq!(&base[2..], &[0, 0]);
                    assert_eq!(directions, &vec![vec![0, 0, 1, 2]]);
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn affine_subspace_requires_square_minus_one() {
        assert!(matches!(
            max_affine_subspace(field(3), 4, SubspaceHost::Paraboloid),
            Err(Error::MinusOneNotSquare(3))
        ));
    }

    #[test]
    fn odd_dimension_subspace_sizes() {
        let f = field(5);
        let p = max_affine_subspace(f.clone(), 3, SubspaceHost::Paraboloid).unwrap();
        assert_eq!(p.cardinality(), 5);
        let s = max_affine_subspace(f.clone(), 3, SubspaceHost::Sphere(fe(1))).unwrap();
        assert_eq!(s.cardinality(), 5);
        // 2 is not a square mod 5: no base point on the first coordinate alone
        assert!(matches!(
            max_affine_subspace(f, 3, SubspaceHost::Sphere(fe(2))),
            Err(Error::NoBasePointFound(_))
        ));
    }

    #[test]
    fn restrict_hat_of_delta_is_one() {
        let v = Variety::paraboloid(field(5), 2).unwrap();
        let g = GridFunction::delta(v.space().clone(), 0);
        let r = restrict_hat(&g, &v).unwrap();
        assert!(r.values.iter().all(|x| (x - 1.0).norm() < 1e-12));
        assert!((r.norm(2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restrict_hat_routes_agree() {
        let v = Variety::sphere(field(9), 2, fe(1)).unwrap();
        for seed in 0..4 {
            let g = random_function(v.space().clone(), seed, Distribution::ComplexGaussian);
            let a = restrict_hat(&g, &v).unwrap();
            let b = restrict_hat_via_transform(&g, &v).unwrap();
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).norm() < 1e-10);
            }
            assert!(a.norm(2.0).unwrap() <= a.norm(f64::INFINITY).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn extension_of_one_has_unit_mass_at_origin() {
        let v = Variety::paraboloid(field(5), 3).unwrap();
        let e = measure_transform(&v).unwrap();
        assert!((e.values()[0] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn circle_measure_transform_is_real() {
        let v = Variety::sphere(field(3), 2, fe(1)).unwrap();
        let e = measure_transform(&v).unwrap();
        assert!(e.values().iter().all(|z| z.im.abs() < 1e-12));
    }

    #[test]
    fn extension_matches_direct_sum() {
        let v = Variety::sphere(field(5), 2, fe(2)).unwrap();
        let s = v.space();
        let f = s.field();
        let vals: Vec<Complex64> = (0..v.cardinality())
            .map(|k| Complex64::new(k as f64, 1.0 - k as f64))
            .collect();
        let e = extension(&vals, &v).unwrap();
        for m in 0..s.len() {
            let cm = s.coords(m);
            let direct: Complex64 = v
                .points()
                .iter()
                .zip(&vals)
                .map(|(&x, &g)| f.chi(s.dot(&cm, &s.coords(x))) * g)
                .sum::<Complex64>()
                / v.cardinality() as f64;
            assert!((e.values()[m] - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn descriptor_json() {
        let v = Variety::homogeneous_cone(field(3), 2).unwrap();
        let json = serde_json::to_value(v.descriptor(3)).unwrap();
        assert_eq!(json["label"], "cone");
        assert_eq!(json["cardinality"], 9);
        assert_eq!(json["d"], 2);
        assert_eq!(json["sample_points"].as_array().unwrap().len(), 3);
    }
}
