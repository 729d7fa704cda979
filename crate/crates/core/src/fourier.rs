//! Fourier transform between (F_q^d, dm) and its dual (F_q^d, dx).
//!
//! `hat(g)(x) = sum_m chi(-m.x) g(m)` and
//! `inv(f)(m) = q^{-d} sum_x chi(m.x) f(x)`, so `inv(hat(g)) = g`.
//!
//! Both are computed one axis at a time: d passes, each a q x q character
//! matrix applied along every fiber, O(d q^{d+1}) in total.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::space::{Counting, GridFunction, Normalized, Space};

/// Below this many points a pass runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Forward,
    Backward,
}

fn transform_axes(space: &Space, mut values: Vec<Complex64>, sign: Sign) -> Result<Vec<Complex64>> {
    let q = space.q();
    let table = space.field().product_table()?;
    let kernel: Vec<Complex64> = match sign {
        Sign::Forward => table.iter().map(|c| c.conj()).collect(),
        Sign::Backward => table.to_vec(),
    };
    let mut stride = 1usize;
    let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
    for _ in 0..space.dim() {
        let pass = |(idx, o): (usize, &mut Complex64)| {
            let x = (idx / stride) % q;
            let base = idx - x * stride;
            let row = &kernel[x * q..(x + 1) * q];
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, w) in row.iter().enumerate() {
                acc += w * values[base + m * stride];
            }
            *o = acc;
        };
        if values.len() >= PARALLEL_THRESHOLD {
            out.par_iter_mut().enumerate().for_each(pass);
        } else {
            out.iter_mut().enumerate().for_each(pass);
        }
        std::mem::swap(&mut values, &mut out);
        stride *= q;
    }
    Ok(values)
}

/// Forward transform from the counting-measure side to the dual side.
pub fn hat(g: &GridFunction<Counting>) -> Result<GridFunction<Normalized>> {
    let values = transform_axes(g.space(), g.values().to_vec(), Sign::Forward)?;
    GridFunction::from_values(g.space().clone(), values)
}

/// Inverse transform from the dual side back to the counting-measure side.
pub fn inv(f: &GridFunction<Normalized>) -> Result<GridFunction<Counting>> {
    let mut values = transform_axes(f.space(), f.values().to_vec(), Sign::Backward)?;
    let scale = 1.0 / f.space().len() as f64;
    values.iter_mut().for_each(|v| *v *= scale);
    GridFunction::from_values(f.space().clone(), values)
}

/// `(f * g)(m) = sum_{m'} f(m - m') g(m')`, computed in frequency space.
pub fn convolve_dm(f: &GridFunction<Counting>, g: &GridFunction<Counting>) -> Result<GridFunction<Counting>> {
    f.space().ensure_same(g.space())?;
    let (fh, gh) = (hat(f)?, hat(g)?);
    let prod: Vec<Complex64> = fh.values().iter().zip(gh.values()).map(|(a, b)| a * b).collect();
    inv(&GridFunction::from_values(f.space().clone(), prod)?)
}
