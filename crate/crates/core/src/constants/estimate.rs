//! Search for test functions with large restriction ratio.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{conjugate, duality_map, elapsed_ms, restriction_ratio, upper_bound, Provenance, RatioRecord, Side};
use crate::error::Result;
use crate::lifting::FunctionClass;
use crate::space::{rng_from_seed, Counting, GridFunction};
use crate::varieties::{
    extension, max_affine_subspace, restrict_hat_via_transform, SubspaceHost, Variety, VarietyKind,
};

/// Random seeds tried before an ascent.
pub const ASCENT_START_SEEDS: u64 = 20;
/// An ascent stops after this many consecutive non-improving steps.
pub const ASCENT_PATIENCE: usize = 200;
const NOISE_SCALE: f64 = 0.1;

const RANDOM_STREAM: u64 = 1;
const START_STREAM: u64 = 2;
const NOISE_STREAM: u64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Delta,
    Constant,
    Subspace,
    Random,
    Ascent,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Delta,
        Strategy::Constant,
        Strategy::Subspace,
        Strategy::Random,
        Strategy::Ascent,
    ];
}

impl std::str::FromStr for Strategy {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "delta" => Strategy::Delta,
            "constant" => Strategy::Constant,
            "subspace" => Strategy::Subspace,
            "random" => Strategy::Random,
            "ascent" => Strategy::Ascent,
            other => return Err(crate::error::Error::Parse(format!("unknown strategy {other:?}"))),
        })
    }
}

/// Inputs of [`estimate_r`].
#[derive(Clone, Debug, Serialize)]
pub struct EstimateParams {
    pub p: f64,
    pub r: f64,
    pub class: FunctionClass,
    pub strategies: Vec<Strategy>,
    /// Random draws for `random`, steps for `ascent`.
    pub budget: usize,
    pub seed: u64,
}

/// Best ratio found, the function attaining it, and the best per strategy.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub best: RatioRecord,
    pub witness: GridFunction<Counting>,
    pub by_strategy: Vec<RatioRecord>,
}

/// Seed of the i-th draw in a stream, via the splitmix64 finalizer.
pub fn derive_seed(seed: u64, stream: u64, i: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone)]
struct Candidate {
    provenance: Provenance,
    ratio: f64,
    g: GridFunction<Counting>,
}

struct Search<'a> {
    v: &'a Variety,
    params: &'a EstimateParams,
}

impl Search<'_> {
    fn ratio(&self, g: &GridFunction<Counting>) -> Result<f64> {
        restriction_ratio(g, self.v, self.params.p, self.params.r)
    }

    fn candidate(&self, provenance: Provenance, g: GridFunction<Counting>) -> Result<Option<Candidate>> {
        let g = self.params.class.project(&g);
        if g.is_zero() {
            return Ok(None);
        }
        let ratio = self.ratio(&g)?;
        Ok(Some(Candidate { provenance, ratio, g }))
    }

    fn delta(&self) -> Result<Option<Candidate>> {
        self.candidate(Provenance::Delta, GridFunction::delta(self.v.space().clone(), 0))
    }

    fn constant(&self) -> Result<Option<Candidate>> {
        let one = GridFunction::constant(self.v.space().clone(), Complex64::new(1.0, 0.0));
        self.candidate(Provenance::Constant, one)
    }

    /// Dual test function of 1_H for the largest affine subspace H of V.
    fn subspace(&self) -> Result<Option<Candidate>> {
        let host = match self.v.kind() {
            VarietyKind::Paraboloid => SubspaceHost::Paraboloid,
            VarietyKind::Sphere { radius } => SubspaceHost::Sphere(crate::field::FieldElement(*radius)),
            _ => return Ok(None),
        };
        let h = match max_affine_subspace(self.v.field().clone(), self.v.ambient_dim(), host) {
            Ok(h) => h,
            Err(_) => return Ok(None),
        };
        let mut on_v = vec![Complex64::new(0.0, 0.0); self.v.cardinality()];
        for &p in h.points() {
            if let Some(pos) = self.v.position(p) {
                on_v[pos] = Complex64::new(1.0, 0.0);
            }
        }
        let e = extension(&on_v, self.v)?;
        let g = GridFunction::from_values(e.space().clone(), duality_map(e.values(), conjugate(self.params.p)))?;
        self.candidate(Provenance::Subspace, g)
    }

    fn random(&self, stream: u64, count: u64) -> Result<Vec<Candidate>> {
        let space = self.v.space();
        let found: Vec<Option<Candidate>> = (0..count)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(self.params.seed, stream, i);
                let g = self.params.class.random(space, seed);
                self.candidate(Provenance::Random { seed }, g)
            })
            .collect::<Result<_>>()?;
        Ok(found.into_iter().flatten().collect())
    }

    /// One fixed-point step: restriction, r-duality on V, extension,
    /// p-duality, class projection.
    fn step(&self, g: &GridFunction<Counting>) -> Result<GridFunction<Counting>> {
        let h = restrict_hat_via_transform(g, self.v)?;
        let h = duality_map(&h.values, self.params.r);
        let e = extension(&h, self.v)?;
        let next = GridFunction::from_values(e.space().clone(), duality_map(e.values(), conjugate(self.params.p)))?;
        Ok(normalized(&self.params.class.project(&next)))
    }

    fn ascent(&self, start: &Candidate) -> Result<Candidate> {
        let mut rng = rng_from_seed(derive_seed(self.params.seed, NOISE_STREAM, 0));
        let mut best_g = normalized(&start.g);
        let mut best = start.ratio;
        let mut current = best_g.clone();
        let mut stale = 0;
        let mut steps = 0;
        while steps < self.params.budget && stale < ASCENT_PATIENCE {
            steps += 1;
            let next = self.step(&current)?;
            let ratio = if next.is_zero() { 0.0 } else { self.ratio(&next)? };
            if ratio > best {
                best = ratio;
                best_g = next.clone();
                current = next;
                stale = 0;
            } else {
                stale += 1;
                let scale = NOISE_SCALE / (best_g.space().len() as f64).sqrt();
                let values = best_g
                    .values()
                    .iter()
                    .map(|&z| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        z + Complex64::new(re, im) * scale
                    })
                    .collect();
                let noise = GridFunction::from_values(best_g.space().clone(), values)?;
                current = normalized(&self.params.class.project(&noise));
            }
        }
        Ok(Candidate {
            provenance: Provenance::Ascent {
                seed: self.params.seed,
                iterations: steps,
            },
            ratio: best,
            g: best_g,
        })
    }
}

fn normalized(g: &GridFunction<Counting>) -> GridFunction<Counting> {
    let n = g.lp_norm(2.0).unwrap_or(0.0);
    if n == 0.0 {
        g.clone()
    } else {
        g.scaled(Complex64::new(1.0 / n, 0.0))
    }
}

/// First maximal candidate; later ones replace it only on a strict improvement.
fn best_of(cands: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
    cands.into_iter().fold(None, |best: Option<Candidate>, c| match best {
        Some(b) if c.ratio <= b.ratio => Some(b),
        _ => Some(c),
    })
}

/// Lower bound for R(p -> r) on V over the requested class of test
/// functions. The delta at the origin is always evaluated.
pub fn estimate_r(v: &Variety, params: &EstimateParams) -> Result<Estimate> {
    let start = Instant::now();
    let search = Search { v, params };
    let wants = |s: Strategy| params.strategies.contains(&s);
    let mut per_strategy: Vec<(Candidate, u64)> = Vec::new();
    let clock = Instant::now();
    let delta = search.delta()?.expect("delta at 0 lies in every class");
    per_strategy.push((delta, elapsed_ms(clock)));
    let mut pool: Vec<Candidate> = Vec::new();
    if wants(Strategy::Constant) || wants(Strategy::Ascent) {
        let clock = Instant::now();
        if let Some(c) = search.constant()? {
            if wants(Strategy::Constant) {
                per_strategy.push((c.clone(), elapsed_ms(clock)));
            }
            pool.push(c);
        }
    }
    if wants(Strategy::Subspace) || wants(Strategy::Ascent) {
        let clock = Instant::now();
        if let Some(c) = search.subspace()? {
            if wants(Strategy::Subspace) {
                per_strategy.push((c.clone(), elapsed_ms(clock)));
            }
            pool.push(c);
        }
    }
    if wants(Strategy::Random) {
        let clock = Instant::now();
        if let Some(c) = best_of(search.random(RANDOM_STREAM, params.budget as u64)?) {
            per_strategy.push((c, elapsed_ms(clock)));
        }
    }
    if wants(Strategy::Ascent) {
        let clock = Instant::now();
        let delta = search.delta()?.expect("delta at 0 lies in every class");
        let starts = std::iter::once(delta)
            .chain(pool)
            .chain(search.random(START_STREAM, ASCENT_START_SEEDS)?);
        let start = best_of(starts).expect("delta is always a start");
        per_strategy.push((search.ascent(&start)?, elapsed_ms(clock)));
    }

    let bound = upper_bound(v, params.p, params.r, params.class);
    let record = |c: &Candidate, ms: u64| RatioRecord {
        variety: v.label(),
        q: v.field().order(),
        d: v.param_dim(),
        p: params.p,
        r: params.r,
        class: params.class,
        provenance: c.provenance.clone(),
        ratio: c.ratio,
        side: Side::Restriction,
        upper_bound: bound,
        elapsed_ms: ms,
    };
    let by_strategy: Vec<RatioRecord> = per_strategy.iter().map(|(c, ms)| record(c, *ms)).collect();
    let best = best_of(per_strategy.into_iter().map(|(c, _)| c)).expect("delta is always present");
    Ok(Estimate {
        best: record(&best, elapsed_ms(start)),
        witness: best.g,
        by_strategy,
    })
}
