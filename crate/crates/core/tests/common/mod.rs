//! Reference implementations written without the crate's field tables.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use ffrl::{Complex64, FieldElement, FiniteField};

/// F_p by integer arithmetic, or F_9 as F_3[i] with i^2 = -1.
/// Element k is the integer k for F_p and a + 3b for a + b i in F_9.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub q: u32,
    p: u32,
}

impl Oracle {
    pub fn new(q: u32) -> Self {
        let p = if q == 9 { 3 } else { q };
        assert!(
            q == 9 || (2..q).all(|k| !q.is_multiple_of(k)),
            "oracle covers primes and 9"
        );
        Self { q, p }
    }

    fn split(&self, a: u32) -> (u32, u32) {
        if self.q == 9 {
            (a % 3, a / 3)
        } else {
            (a, 0)
        }
    }

    fn join(&self, a: u32, b: u32) -> u32 {
        if self.q == 9 {
            a % 3 + 3 * (b % 3)
        } else {
            a % self.p
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        self.join(a + c, b + d)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let (a, b) = self.split(x);
        self.join((self.p - a) % self.p, (self.p - b) % self.p)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        if self.q == 9 {
            // (a + b i)(c + d i) = (ac - bd) + (ad + bc) i
            self.join(a * c + 2 * b * d, a * d + b * c)
        } else {
            (a * c) % self.p
        }
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, x))
    }

    /// Tr(a + b i) = 2a in F_9; the identity on F_p.
    pub fn trace(&self, x: u32) -> u32 {
        let (a, _) = self.split(x);
        if self.q == 9 {
            (2 * a) % 3
        } else {
            a
        }
    }

    pub fn chi(&self, x: u32) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.trace(x) as f64 / self.p as f64)
    }

    /// Euler's criterion.
    pub fn eta(&self, x: u32) -> i32 {
        if x == 0 {
            return 0;
        }
        if self.pow(x, (self.q as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// G_1 by Gauss's evaluation for primes and Davenport-Hasse for F_9.
    pub fn gauss_sum_one(&self) -> Complex64 {
        let sp = (self.p as f64).sqrt();
        let gp = if self.p % 4 == 1 {
            Complex64::new(sp, 0.0)
        } else {
            Complex64::new(0.0, sp)
        };
        if self.q == 9 {
            -(gp * gp)
        } else {
            gp
        }
    }
}

pub fn field(q: u64) -> Arc<FiniteField> {
    Arc::new(FiniteField::from_order(q).unwrap())
}

pub fn fe(k: u32) -> FieldElement {
    FieldElement(k)
}

/// Digits of `idx` in base q, least significant first.
pub fn coords(q: usize, dim: usize, mut idx: usize) -> Vec<u32> {
    (0..dim)
        .map(|_| {
            let c = idx % q;
            idx /= q;
            c as u32
        })
        .collect()
}

pub fn dot(o: &Oracle, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |s, (&x, &y)| o.add(s, o.mul(x, y)))
}

pub fn sum_sq(o: &Oracle, a: &[u32]) -> u32 {
    dot(o, a, a)
}

/// g^(x) = sum_m chi(-m.x) g(m), directly.
pub fn naive_hat(o: &Oracle, dim: usize, g: &[Complex64]) -> Vec<Complex64> {
    let q = o.q as usize;
    let n = q.pow(dim as u32);
    (0..n)
        .map(|x| {
            let cx = coords(q, dim, x);
            (0..n)
                .map(|m| o.chi(o.neg(dot(o, &coords(q, dim, m), &cx))) * g[m])
                .sum()
        })
        .collect()
}

/// Points of {x : pred(x)} in index order.
pub fn enumerate(o: &Oracle, dim: usize, pred: impl Fn(&[u32]) -> bool) -> Vec<usize> {
    let q = o.q as usize;
    (0..q.pow(dim as u32)).filter(|&i| pred(&coords(q, dim, i))).collect()
}

pub fn cone_pred(o: &Oracle) -> impl Fn(&[u32]) -> bool + '_ {
    move |x: &[u32]| {
        let n = x.len();
        sum_sq(o, &x[..n - 2]) == o.mul(x[n - 2], x[n - 1])
    }
}

pub fn hsphere_pred(o: &Oracle, j: u32) -> impl Fn(&[u32]) -> bool + '_ {
    move |x: &[u32]| {
        let n = x.len();
        sum_sq(o, &x[..n - 1]) == o.mul(j, o.mul(x[n - 1], x[n - 1]))
    }
}

pub fn sphere_pred(o: &Oracle, j: u32) -> impl Fn(&[u32]) -> bool + '_ {
    move |x: &[u32]| sum_sq(o, x) == j
}

pub fn paraboloid_pred(o: &Oracle) -> impl Fn(&[u32]) -> bool + '_ {
    move |x: &[u32]| {
        let n = x.len();
        sum_sq(o, &x[..n - 1]) == x[n - 1]
    }
}

/// (d sigma)^vee(m) = |V|^{-1} sum_{x in V} chi(m.x), directly.
pub fn measure_transform_at(o: &Oracle, dim: usize, points: &[usize], m: &[u32]) -> Complex64 {
    let q = o.q as usize;
    let s: Complex64 = points.iter().map(|&x| o.chi(dot(o, m, &coords(q, dim, x)))).sum();
    s / points.len() as f64
}

/// |S_j| in F_q^d, j != 0, from the classical count of sum-of-squares
/// representations.
pub fn sphere_count(o: &Oracle, d: usize, j: u32) -> i64 {
    let q = o.q as i64;
    let minus_one = o.neg(1);
    if d.is_multiple_of(2) {
        let e = o.eta(o.pow(minus_one, (d / 2) as u64)) as i64;
        q.pow(d as u32 - 1) - e * q.pow((d as u32 - 2) / 2)
    } else {
        let e = o.eta(o.mul(o.pow(minus_one, ((d - 1) / 2) as u64), j)) as i64;
        q.pow(d as u32 - 1) + e * q.pow((d as u32 - 1) / 2)
    }
}

pub fn lp(values: &[Complex64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    values.iter().map(|v| v.norm().powf(p)).sum::<f64>().powf(1.0 / p)
}
