//! Finite fields GF(q) for prime powers q <= 16, backed by full lookup tables.
//!
//! Elements are stored as codes `0..q`. A code is the base-p digit vector of
//! the polynomial representative: digit `i` is the coefficient of `x^i`. Code
//! 0 is zero and code 1 is one.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest field order the tables are built for.
pub const MAX_ORDER: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrimePower(u32),
    Unsupported(u32),
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            FieldError::Unsupported(q) => write!(f, "field order {q} exceeds {MAX_ORDER}"),
            FieldError::DivisionByZero => f.write_str("inverse of zero"),
        }
    }
}

impl core::error::Error for FieldError {}

/// A field element code. Only meaningful together with the table that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u8);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic tables for GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u32,
    p: u32,
    e: u32,
    /// Monic modulus, low degree first, length e + 1.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable").field("q", &self.q).field("modulus", &self.modulus).finish_non_exhaustive()
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` when `q` is not a
/// prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - dm;
        let lead = *r.last().unwrap();
        for (i, &c) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(degree);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push(code % p);
            code /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d) {
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree, comparing coefficient vectors from the constant term upwards.
pub fn smallest_irreducible(p: u32, degree: u32) -> Vec<u32> {
    // monic_polys enumerates codes with the constant term as least
    // significant digit, which is not lexicographic low-degree-first.
    // Reverse the digit order to get that ordering.
    let count = p.pow(degree);
    let mut best: Option<Vec<u32>> = None;
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        let mut c = code;
        let mut digits = vec![0u32; degree as usize];
        for slot in (0..degree as usize).rev() {
            digits[slot] = c % p;
            c /= p;
        }
        coeffs.extend_from_slice(&digits);
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            best = Some(coeffs);
            break;
        }
    }
    best.expect("an irreducible polynomial of every degree exists")
}

impl FieldTable {
    /// Builds GF(q).
    pub fn new(q: u32) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(FieldError::Unsupported(q));
        }
        let modulus = smallest_irreducible(p, e);
        let qs = q as usize;

        let digits = |code: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut c = code;
            for _ in 0..e {
                v.push(c % p);
                c /= p;
            }
            v
        };
        let encode = |coeffs: &[u32]| -> u8 {
            let mut code = 0u32;
            for &c in coeffs.iter().take(e as usize).rev() {
                code = code * p + c;
            }
            code as u8
        };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&sum);

                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[a as usize * qs + b as usize] = encode(&r);
            }
        }

        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }

        Ok(FieldTable { q, p, e, modulus: modulus.iter().map(|&c| c as u8).collect(), add, mul, neg, inv })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q as u8).map(Fe)
    }

    pub fn element(&self, code: u32) -> Option<Fe> {
        (code < self.q).then_some(Fe(code as u8))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(Fe(self.inv[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: Fe, mut exp: u32) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}
