//! Finite fields F_{p^f} as F_p[x] modulo a fixed monic irreducible.
//!
//! The modulus is the lexicographically least monic irreducible of degree
//! `f`, comparing coefficient vectors from `x^{f-1}` down to `x^0`. For
//! `f = 1` that is `x` itself, so F_p is represented by constants.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::ensure_prime;

/// Largest field order we are willing to index elements of.
const MAX_ORDER: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    f: u32,
    /// Monic, low degree first, length `f + 1`.
    modulus: Vec<u64>,
}

/// Coefficients in the power basis `1, x, ..., x^{f-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(Vec<u64>);

pub(crate) fn zero_of_degree(f: u32) -> FqElem {
    FqElem(vec![0; f as usize])
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = mulmod(lead, c, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for k in 1..=deg / 2 {
        for code in 0..p.pow(k as u32) {
            let mut divisor = digits(code, p, k);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        ensure_prime(p)?;
        if f == 0 {
            return Err(Error::NonPositive("field degree f"));
        }
        match p.checked_pow(f) {
            Some(q) if q <= MAX_ORDER => {}
            _ => {
                return Err(Error::Budget {
                    what: "finite field order",
                    needed: format!("{p}^{f}"),
                    limit: MAX_ORDER,
                })
            }
        }
        let f_us = f as usize;
        let modulus = (0..p.pow(f))
            .map(|code| {
                let mut m = digits(code, p, f_us);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial exists in every degree");
        Ok(FiniteField { p, f, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// The defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.f as usize])
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> FqElem {
        let mut v = self.zero().0;
        v[0] = k.rem_euclid(self.p as i64) as u64;
        FqElem(v)
    }

    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<FqElem> {
        if coeffs.len() != self.f as usize {
            return Err(Error::Mismatch(format!(
                "F_{}^{} element needs {} coordinates, got {}",
                self.p,
                self.f,
                self.f,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::Invalid(format!(
                "coefficient {c} not reduced mod {}",
                self.p
            )));
        }
        Ok(FqElem(coeffs))
    }

    pub fn contains(&self, a: &FqElem) -> bool {
        a.0.len() == self.f as usize && a.0.iter().all(|&c| c < self.p)
    }

    /// Element with base-`p` digits `code`; inverse of [`FiniteField::code`].
    pub fn element(&self, code: u64) -> FqElem {
        FqElem(digits(code % self.order(), self.p, self.f as usize))
    }

    pub fn code(&self, a: &FqElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |c| self.element(c))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem((0..self.f).map(|_| rng.gen_range(0..self.p)).collect())
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FqElem, k: u64) -> FqElem {
        let k = k % self.p;
        FqElem(a.0.iter().map(|&x| mulmod(x, k, self.p)).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = self.f as usize;
        if f == 1 {
            return FqElem(vec![mulmod(a.0[0], b.0[0], self.p)]);
        }
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(f, 0);
        FqElem(r)
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}
