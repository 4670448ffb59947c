//! Truncated p-typical Witt vectors over F_{p^f}.
//!
//! Addition, multiplication and negation are evaluated through the universal
//! Witt polynomials, which are built once per `(p, n)` by solving the ghost
//! identities over the integers and then cached.

mod field;
mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;

pub use field::{FiniteField, FqElem};
pub use poly::{IntPoly, ModPoly};

use crate::error::{Error, Result};
use crate::numtheory::ensure_prime;

/// Largest ghost degree `p^(n-1)` for which Witt polynomials are built.
pub const MAX_GHOST_DEGREE: u64 = 32;

/// Default cap on `p^n` for [`iso_with_zpn`].
pub const DEFAULT_ISO_BUDGET: u64 = 243;

/// Ghost components `w_i = sum_{j<=i} p^j x_j^(p^(i-j))`.
pub fn ghost(p: u64, coords: &[BigInt]) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (0..coords.len())
        .map(|i| {
            (0..=i)
                .map(|j| pb.pow(j as u32) * coords[j].pow(p.pow((i - j) as u32) as u32))
                .sum()
        })
        .collect()
}

/// `w_i` as a polynomial in the variables `offset .. offset + i + 1`.
fn ghost_poly(p: u64, i: usize, offset: usize, nvars: usize) -> IntPoly {
    let pb = BigInt::from(p);
    (0..=i).fold(IntPoly::zero(nvars), |acc, j| {
        let term = IntPoly::var(nvars, offset + j)
            .pow(p.pow((i - j) as u32))
            .scale(&pb.pow(j as u32));
        acc.add(&term)
    })
}

/// Solves `w_i(F) = target_i` for polynomials `F_0, F_1, ...` in turn.
fn solve_ghost(p: u64, n: usize, target: impl Fn(usize) -> IntPoly) -> Result<Vec<IntPoly>> {
    let pb = BigInt::from(p);
    let mut out: Vec<IntPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = target(i);
        for (j, prev) in out.iter().enumerate() {
            let lower = prev.pow(p.pow((i - j) as u32)).scale(&pb.pow(j as u32));
            rhs = rhs.sub(&lower);
        }
        out.push(rhs.div_exact(&pb.pow(i as u32))?);
    }
    Ok(out)
}

/// Sum, product and negation polynomials for `W_n` at the prime `p`.
///
/// `sum` and `prod` are in the `2n` variables `X_0..X_{n-1}, Y_0..Y_{n-1}`;
/// `neg` is in `X_0..X_{n-1}` alone.
#[derive(Debug)]
pub struct WittPolySet {
    p: u64,
    n: usize,
    sum: Vec<IntPoly>,
    prod: Vec<IntPoly>,
    neg: Vec<IntPoly>,
    sum_mod: Vec<ModPoly>,
    prod_mod: Vec<ModPoly>,
    neg_mod: Vec<ModPoly>,
}

impl WittPolySet {
    fn build(p: u64, n: usize) -> Result<Self> {
        let two_n = 2 * n;
        let sum = solve_ghost(p, n, |i| {
            ghost_poly(p, i, 0, two_n).add(&ghost_poly(p, i, n, two_n))
        })?;
        let prod = solve_ghost(p, n, |i| {
            ghost_poly(p, i, 0, two_n).mul(&ghost_poly(p, i, n, two_n))
        })?;
        let neg = solve_ghost(p, n, |i| ghost_poly(p, i, 0, n).scale(&BigInt::from(-1)))?;
        let reduce = |v: &[IntPoly]| v.iter().map(|q| q.reduce(p)).collect();
        Ok(WittPolySet {
            p,
            n,
            sum_mod: reduce(&sum),
            prod_mod: reduce(&prod),
            neg_mod: reduce(&neg),
            sum,
            prod,
            neg,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sum(&self) -> &[IntPoly] {
        &self.sum
    }

    pub fn prod(&self) -> &[IntPoly] {
        &self.prod
    }

    pub fn neg(&self) -> &[IntPoly] {
        &self.neg
    }

    /// Variable names `X0.., Y0..` matching [`WittPolySet::sum`] and [`WittPolySet::prod`].
    pub fn variable_names(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| format!("X{i}"))
            .chain((0..self.n).map(|i| format!("Y{i}")))
            .collect()
    }
}

type PolyCache = Mutex<HashMap<(u64, usize), Arc<WittPolySet>>>;

static POLY_CACHE: OnceLock<PolyCache> = OnceLock::new();

/// Cached Witt polynomials for `(p, n)`.
pub fn witt_polys(p: u64, n: usize) -> Result<Arc<WittPolySet>> {
    ensure_prime(p)?;
    if n == 0 {
        return Err(Error::NonPositive("Witt length n"));
    }
    let degree = u32::try_from(n - 1).ok().and_then(|e| p.checked_pow(e));
    if degree.is_none_or(|g| g > MAX_GHOST_DEGREE) {
        return Err(Error::Budget {
            what: "Witt polynomial ghost degree",
            needed: format!("{p}^{}", n - 1),
            limit: MAX_GHOST_DEGREE,
        });
    }
    let cache = POLY_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(set) = guard.get(&(p, n)) {
        return Ok(Arc::clone(set));
    }
    let set = Arc::new(WittPolySet::build(p, n)?);
    guard.insert((p, n), Arc::clone(&set));
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittVector {
    p: u64,
    f: u32,
    coords: Vec<FqElem>,
}

impl WittVector {
    pub fn new(field: &FiniteField, coords: Vec<FqElem>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| !field.contains(c)) {
            return Err(Error::Mismatch(format!(
                "coordinate {bad} is not in {field}"
            )));
        }
        Ok(WittVector {
            p: field.characteristic(),
            f: field.degree(),
            coords,
        })
    }

    pub fn coords(&self) -> &[FqElem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field_degree(&self) -> u32 {
        self.f
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `V(a_0, ..., a_{n-1}) = (0, a_0, ..., a_{n-1})`.
pub fn verschiebung(a: &WittVector) -> WittVector {
    let mut coords = Vec::with_capacity(a.len() + 1);
    coords.push(field::zero_of_degree(a.f));
    coords.extend(a.coords.iter().cloned());
    WittVector {
        coords,
        ..a.clone()
    }
}

/// Truncation `W_{n+1} -> W_n`: drops the last coordinate.
pub fn restrict(a: &WittVector) -> Result<WittVector> {
    if a.len() < 2 {
        return Err(Error::Invalid(
            "restriction needs a vector of length at least 2".into(),
        ));
    }
    Ok(WittVector {
        coords: a.coords[..a.len() - 1].to_vec(),
        ..a.clone()
    })
}

/// The ring `W_n(F_{p^f})`.
#[derive(Debug, Clone)]
pub struct WittRing {
    field: FiniteField,
    n: usize,
    polys: Arc<WittPolySet>,
}

impl WittRing {
    pub fn new(p: u64, f: u32, n: usize) -> Result<Self> {
        let field = FiniteField::new(p, f)?;
        let polys = witt_polys(p, n)?;
        Ok(WittRing { field, n, polys })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn order(&self) -> BigUint {
        order_wn(
            self.field.characteristic(),
            self.field.degree(),
            self.n as u64,
        )
    }

    fn check(&self, a: &WittVector) -> Result<()> {
        if a.p != self.field.characteristic() || a.f != self.field.degree() {
            return Err(Error::Mismatch(format!(
                "vector over F_{}^{} used in W_{}({})",
                a.p, a.f, self.n, self.field
            )));
        }
        if a.len() != self.n {
            return Err(Error::Mismatch(format!(
                "vector of length {} used in W_{}",
                a.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn vector(&self, coords: Vec<FqElem>) -> Result<WittVector> {
        let v = WittVector::new(&self.field, coords)?;
        self.check(&v)?;
        Ok(v)
    }

    pub fn zero(&self) -> WittVector {
        WittVector {
            p: self.field.characteristic(),
            f: self.field.degree(),
            coords: vec![self.field.zero(); self.n],
        }
    }

    pub fn one(&self) -> WittVector {
        let mut v = self.zero();
        v.coords[0] = self.field.one();
        v
    }

    fn eval(&self, polys: &[ModPoly], point: &[FqElem]) -> WittVector {
        WittVector {
            p: self.field.characteristic(),
            f: self.field.degree(),
            coords: polys.iter().map(|q| q.eval(&self.field, point)).collect(),
        }
    }

    fn pair(a: &WittVector, b: &WittVector) -> Vec<FqElem> {
        a.coords.iter().chain(&b.coords).cloned().collect()
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.eval(&self.polys.sum_mod, &Self::pair(a, b)))
    }

    pub fn mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.eval(&self.polys.prod_mod, &Self::pair(a, b)))
    }

    pub fn neg(&self, a: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        Ok(self.eval(&self.polys.neg_mod, &a.coords))
    }

    pub fn sub(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.add(a, &self.neg(b)?)
    }

    /// The image of the integer `k` under `Z -> W_n`.
    pub fn from_int(&self, k: i64) -> WittVector {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.eval(&self.polys.sum_mod, &Self::pair(&acc, &base));
            }
            base = self.eval(&self.polys.sum_mod, &Self::pair(&base, &base));
            m >>= 1;
        }
        if k < 0 {
            acc = self.eval(&self.polys.neg_mod, &acc.coords);
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> WittVector {
        WittVector {
            p: self.field.characteristic(),
            f: self.field.degree(),
            coords: (0..self.n).map(|_| self.field.random(rng)).collect(),
        }
    }

    /// Every element, in base-`q` order of the coordinates.
    pub fn elements(&self) -> impl Iterator<Item = WittVector> + '_ {
        let q = self.field.order();
        let total = q.pow(self.n as u32);
        (0..total).map(move |mut code| {
            let coords = (0..self.n)
                .map(|_| {
                    let c = self.field.element(code % q);
                    code /= q;
                    c
                })
                .collect();
            WittVector {
                p: self.field.characteristic(),
                f: self.field.degree(),
                coords,
            }
        })
    }
}

/// `|W_n(F_{p^f})| = p^(n f)`; `W_0` is the zero group.
pub fn order_wn(p: u64, f: u32, n: u64) -> BigUint {
    BigUint::from(p).pow(f * n as u32)
}

/// Lengths `s(j) = #{i >= 0 : j p^i <= m}` for `j <= m` prime to `p`, the
/// p-typical factors of the big Witt vectors `𝕎_m`.
pub fn big_witt_splitting(m: u64, p: u64) -> Vec<(u64, u32)> {
    (1..=m)
        .filter(|j| j % p != 0)
        .map(|j| {
            let mut s = 0;
            let mut x = j;
            while x <= m {
                s += 1;
                x = x.saturating_mul(p);
            }
            (j, s)
        })
        .collect()
}

/// `|𝕎_m(F_{p^f})|`, assembled from the p-typical splitting.
pub fn big_witt_order(m: u64, p: u64, f: u32) -> Result<BigUint> {
    ensure_prime(p)?;
    let parts = big_witt_splitting(m, p);
    let total: u64 = parts.iter().map(|&(_, s)| s as u64).sum();
    if total != m {
        return Err(Error::Internal(format!(
            "big Witt splitting of length {m} has total length {total}"
        )));
    }
    Ok(parts
        .iter()
        .map(|&(_, s)| order_wn(p, f, s as u64))
        .fold(BigUint::one(), |acc, o| acc * o))
}

/// Checks that `k -> k·1` is a ring isomorphism `Z/p^n -> W_n(F_p)` and
/// returns its table.
pub fn iso_with_zpn(p: u64, n: usize, budget: u64) -> Result<Vec<(u64, WittVector)>> {
    ensure_prime(p)?;
    let size = u32::try_from(n)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .filter(|&s| s <= budget)
        .ok_or_else(|| Error::Budget {
            what: "Z/p^n isomorphism table",
            needed: format!("{p}^{n}"),
            limit: budget,
        })?;
    let ring = WittRing::new(p, 1, n)?;
    let one = ring.one();
    let mut images = Vec::with_capacity(size as usize);
    let mut current = ring.zero();
    for _ in 0..size {
        images.push(current.clone());
        current = ring.add(&current, &one)?;
    }
    if current != ring.zero() {
        return Err(Error::Internal(format!(
            "{size}·1 is {current}, not 0, in W_{n}(F_{p})"
        )));
    }
    let mut seen: Vec<&WittVector> = images.iter().collect();
    seen.sort();
    seen.dedup();
    if seen.len() as u64 != size {
        return Err(Error::Internal(format!(
            "Z/{size} -> W_{n}(F_{p}) is not injective"
        )));
    }
    for a in 0..size {
        for b in a..size {
            let prod = ring.mul(&images[a as usize], &images[b as usize])?;
            let expected = &images[((a * b) % size) as usize];
            if &prod != expected {
                return Err(Error::Internal(format!(
                    "Z/{size} -> W_{n}(F_{p}) is not multiplicative at {a}·{b}: got {prod}, want {expected}"
                )));
            }
        }
    }
    Ok((0..size).zip(images).collect())
}
