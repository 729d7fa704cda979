//! Dense polynomials over a prime field, coefficients stored low degree first.

pub(crate) fn digits(mut idx: u64, p: u32, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for c in out.iter_mut() {
        *c = (idx % p as u64) as u32;
        idx /= p as u64;
    }
    out
}

pub(crate) fn from_digits(coeffs: &[u32], p: u32) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg_m = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    while r.len() > deg_m {
        let lead = r.pop().unwrap() % p64;
        if lead == 0 {
            continue;
        }
        let shift = r.len() - deg_m;
        for (k, &mk) in m[..deg_m].iter().enumerate() {
            // subtract lead * m_k * x^(shift + k)
            let sub = lead * mk as u64 % p64;
            r[shift + k] = (r[shift + k] + p64 - sub) % p64;
        }
    }
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = rem_monic(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn monic(low: &[u32]) -> Vec<u32> {
    let mut v = low.to_vec();
    v.push(1);
    v
}

/// True when the monic polynomial `f` has no monic factor of degree in `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for e in 1..=n / 2 {
        let count = (p as u64).pow(e as u32);
        for k in 0..count {
            let divisor = monic(&digits(k, p, e));
            if rem_monic(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `n`, ordering candidates by the base-`p`
/// integer formed from their non-leading coefficients.
pub(crate) fn lowest_irreducible(p: u32, n: usize) -> Option<Vec<u32>> {
    let count = (p as u64).checked_pow(n as u32)?;
    (0..count)
        .map(|k| monic(&digits(k, p, n)))
        .find(|f| is_irreducible(f, p))
}
