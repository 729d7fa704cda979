//! Arithmetic in F_q for odd prime powers q = p^n.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! index are the coefficients of the polynomial representative, lowest degree
//! first. In particular `0` and `1` encode the field zero and one, and the
//! prime subfield occupies the indices `0..p`.
//!
//! Multiplication goes through discrete log/exp tables built from a
//! primitive element; for `q <= 2^10` full addition and multiplication tables
//! are precomputed as well.

mod characters;
mod poly;

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use characters::CharacterTable;

/// Default cap on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;
/// Fields up to this order carry full q x q operation tables.
pub const TABLE_MODE_MAX_ORDER: u32 = 1 << 10;
/// Fields up to this order can build the q x q character product table
/// used by the dense Fourier transform.
pub const PRODUCT_TABLE_MAX_ORDER: u32 = 1 << 12;

/// An element of F_q by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field F_q, q = p^n with p odd.
pub struct FiniteField {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus, low degree first; `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    trace: Vec<u32>,
    characters: CharacterTable,
    product_table: OnceLock<Vec<Complex64>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("twist", &self.characters.twist())
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.modulus == other.modulus
            && self.characters.twist() == other.characters.twist()
    }
}

impl Clone for FiniteField {
    fn clone(&self) -> Self {
        Self {
            p: self.p,
            n: self.n,
            q: self.q,
            modulus: self.modulus.clone(),
            exp: self.exp.clone(),
            log: self.log.clone(),
            neg: self.neg.clone(),
            add_table: self.add_table.clone(),
            mul_table: self.mul_table.clone(),
            trace: self.trace.clone(),
            characters: self.characters.clone(),
            product_table: OnceLock::new(),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `q` into `(p, n)` with `q = p^n`, `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q.is_multiple_of(*k))?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

impl FiniteField {
    /// Builds F_{p^n} with the default order limit.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_limit(p, n, DEFAULT_MAX_ORDER)
    }

    /// Builds the field of order `q`, rejecting non prime powers and
    /// characteristic two.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, n)
    }

    pub fn with_limit(p: u64, n: u32, limit: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= limit && q <= u32::MAX as u64)
            .ok_or(Error::TooLarge {
                size: p.saturating_pow(n),
                limit,
            })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            poly::lowest_irreducible(p, n as usize).ok_or(Error::NoIrreduciblePolynomialFound { p, n })?
        };

        let raw_mul = |a: u32, b: u32| -> u32 {
            if n == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                let da = poly::digits(a as u64, p, n as usize);
                let db = poly::digits(b as u64, p, n as usize);
                poly::from_digits(&poly::mul_mod(&da, &db, &modulus, p), p) as u32
            }
        };

        let (exp, log) = discrete_log_tables(q, raw_mul).ok_or(Error::NoIrreduciblePolynomialFound { p, n })?;

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d = poly::digits(a as u64, p, n as usize);
                let nd: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                poly::from_digits(&nd, p) as u32
            })
            .collect();

        let mut field = Self {
            p,
            n,
            q,
            modulus,
            exp,
            log,
            neg,
            add_table: None,
            mul_table: None,
            trace: Vec::new(),
            characters: CharacterTable::placeholder(),
            product_table: OnceLock::new(),
        };

        if q <= TABLE_MODE_MAX_ORDER {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            let mut mul = vec![0u32; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = field.add_digits(a, b);
                    mul[a as usize * qs + b as usize] = field.mul_log(a, b);
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }

        field.trace = (0..q)
            .map(|a| {
                let mut acc = FieldElement::ZERO;
                let mut frob = FieldElement(a);
                for _ in 0..n {
                    acc = field.add(acc, frob);
                    frob = field.pow(frob, p as u64);
                }
                acc.0
            })
            .collect();
        debug_assert!(field.trace.iter().all(|&t| t < p));
        if field.trace.iter().all(|&t| t == 0) {
            return Err(Error::NoIrreduciblePolynomialFound { p, n });
        }
        field.characters = CharacterTable::build(&field, FieldElement::ONE);
        Ok(field)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q as usize
    }

    /// Monic modulus used for the polynomial representation, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(FieldElement)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn mul_log(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add_table {
            Some(t) => FieldElement(t[a.index() * self.q() + b.index()]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.mul_table {
            Some(t) => FieldElement(t[a.index() * self.q() + b.index()]),
            None => FieldElement(self.mul_log(a.0, b.0)),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.index()] as usize;
        let qm1 = self.q() - 1;
        Some(FieldElement(self.exp[(qm1 - l) % qm1]))
    }

    /// `a / b`; panics on `b = 0`.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero in F_q"))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.index()] as u64;
        let qm1 = self.q as u64 - 1;
        FieldElement(self.exp[((l % qm1) * (e % qm1) % qm1) as usize])
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.exp[1 % self.exp.len()])
    }

    /// Absolute trace F_q -> F_p, returned as an element of the prime subfield.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.trace[a.index()])
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.characters
    }

    /// Additive character chi(a).
    #[inline]
    pub fn chi(&self, a: FieldElement) -> Complex64 {
        self.characters.chi(a)
    }

    /// Quadratic character with eta(0) = 0.
    #[inline]
    pub fn eta(&self, a: FieldElement) -> i32 {
        self.characters.eta(a)
    }

    /// Quadratic character computed from Euler's criterion a^((q-1)/2).
    pub fn quadratic_character(&self, a: FieldElement) -> i32 {
        if a.is_zero() {
            return 0;
        }
        let e = self.pow(a, (self.q as u64 - 1) / 2);
        if e == FieldElement::ONE {
            1
        } else {
            debug_assert_eq!(e, self.neg(FieldElement::ONE));
            -1
        }
    }

    /// Some `i` with `i^2 = -1`, the smallest by index, if one exists.
    pub fn sqrt_of_minus_one(&self) -> Option<FieldElement> {
        let minus_one = self.neg(FieldElement::ONE);
        self.elements().find(|&a| self.square(a) == minus_one)
    }

    /// Copy of this field whose additive character is `a -> chi(c a)`.
    pub fn twisted(&self, c: FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let mut f = self.clone();
        let twist = self.mul(self.characters.twist(), c);
        f.characters = CharacterTable::build(self, twist);
        Ok(f)
    }

    /// Table of chi(a b) indexed by `a * q + b`.
    pub fn product_table(&self) -> Result<&[Complex64]> {
        if self.q > PRODUCT_TABLE_MAX_ORDER {
            return Err(Error::TooLarge {
                size: self.q as u64,
                limit: PRODUCT_TABLE_MAX_ORDER as u64,
            });
        }
        Ok(self.product_table.get_or_init(|| {
            let q = self.q();
            let mut t = vec![Complex64::new(0.0, 0.0); q * q];
            for a in self.elements() {
                for b in self.elements() {
                    t[a.index() * q + b.index()] = self.chi(self.mul(a, b));
                }
            }
            t
        }))
    }
}

/// Walks powers of candidate generators until one of order q - 1 is found.
fn discrete_log_tables(q: u32, mul: impl Fn(u32, u32) -> u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let order = q as usize - 1;
    for g in 1..q {
        if order > 1 && g == 1 {
            continue;
        }
        let mut exp = Vec::with_capacity(order);
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = mul(x, g);
            if x == 1 || exp.len() > order {
                break;
            }
        }
        if exp.len() == order {
            let mut log = vec![0u32; q as usize];
            for (k, &e) in exp.iter().enumerate() {
                log[e as usize] = k as u32;
            }
            return Some((exp, log));
        }
    }
    None
}
