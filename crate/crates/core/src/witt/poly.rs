//! Sparse multivariate polynomials with integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{FiniteField, FqElem};
use crate::error::{Error, Result};

type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = IntPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = IntPoly::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(self.nvars, BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `k`, failing if any division is inexact.
    pub fn div_exact(&self, k: &BigInt) -> Result<IntPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "coefficient {c} of monomial {e:?} is not divisible by {k}"
                )));
            }
            terms.insert(e.clone(), q);
        }
        Ok(IntPoly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * x.pow(k))
            })
            .sum()
    }

    /// Coefficients reduced mod `p`, zero terms dropped.
    pub fn reduce(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        let mut max_exp = vec![0u32; self.nvars];
        let terms: Vec<(Exponents, u64)> = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&pb).to_u64().expect("residue fits in u64");
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        for (e, _) in &terms {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        ModPoly { terms, max_exp }
    }

    /// Writes the polynomial with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, names }
    }
}

struct DisplayPoly<'a> {
    poly: &'a IntPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first reads more naturally
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        for (idx, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], k)
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A polynomial with coefficients in F_p, ready for evaluation over F_{p^f}.
#[derive(Debug, Clone)]
pub struct ModPoly {
    terms: Vec<(Exponents, u64)>,
    max_exp: Vec<u32>,
}

impl ModPoly {
    pub fn eval(&self, field: &FiniteField, point: &[FqElem]) -> FqElem {
        // power tables up to the largest exponent used per variable
        let powers: Vec<Vec<FqElem>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(x, &top)| {
                let mut row = Vec::with_capacity(top as usize + 1);
                row.push(field.one());
                for k in 1..=top as usize {
                    let next = field.mul(&row[k - 1], x);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut term = field.from_int(*c as i64);
            for (row, &k) in powers.iter().zip(e) {
                if k > 0 {
                    term = field.mul(&term, &row[k as usize]);
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_expansion() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let cube = x.add(&y).pow(3);
        assert_eq!(cube.coeff(&[2, 1]), BigInt::from(3));
        assert_eq!(cube.coeff(&[3, 0]), BigInt::from(1));
        assert_eq!(cube.terms().count(), 4);
    }

    #[test]
    fn inexact_division_is_reported() {
        let x = IntPoly::var(1, 0).scale(&BigInt::from(3));
        assert!(x.div_exact(&BigInt::from(3)).is_ok());
        assert!(matches!(
            x.div_exact(&BigInt::from(2)),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = IntPoly::var(2, 0);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn display_orders_by_degree() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let p = x.mul(&x).mul(&y).scale(&BigInt::from(-2)).add(&y);
        let names = vec!["X".to_string(), "Y".to_string()];
        assert_eq!(p.display_with(&names).to_string(), "Y - 2*X^2*Y");
    }

    #[test]
    fn reduced_evaluation_agrees_with_integer_evaluation() {
        let k = FiniteField::new(5, 1).unwrap();
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let p = x.pow(4).mul(&y).sub(&y.pow(2).scale(&BigInt::from(7)));
        for a in 0..5i64 {
            for b in 0..5i64 {
                let exact = p.eval(&[BigInt::from(a), BigInt::from(b)]);
                let modp = p.reduce(5).eval(&k, &[k.from_int(a), k.from_int(b)]);
                assert_eq!(
                    k.from_int(exact.mod_floor(&BigInt::from(5)).to_i64().unwrap()),
                    modp
                );
            }
        }
    }
}
