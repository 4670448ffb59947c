//! Relative and integral K-groups of `A_d = R[x_1..x_d]/(x_1..x_d)^2`, of the
//! coordinate axes `R[x_1..x_d]/(x_i x_j)`, and of the dual numbers, as
//! [`GroupExpr`] values built from truncated Witt vectors of `R`.

mod group;
mod render;
mod ring;

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rayon::prelude::*;

pub use group::{Completeness, DualNumbers, FactorKind, GroupExpr, GroupFactor, Order, Provenance};
pub use ring::RingSpec;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, vp_unchecked};
use crate::tbounds::{m_prime_bound, t_ev, t_od};
use crate::witt::big_witt_order;
use crate::words::{count_aperiodic, count_axes};

/// Which `K_{2i-1}(F_q)` exponent to use in the integral summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuillenConvention {
    /// `K_{2r+1}(F_q) = Z/(q^{r+1} - 1)`.
    #[default]
    Standard,
    /// `K_{2r+1}(F_q) = Z/(q^{r-1} - 1)`; undefined in degree 1.
    Shifted,
}

/// Reading of the odd-degree product at `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum P2OddConvention {
    /// One copy of `R` per odd `m' <= 2r+1` and `s | m'`.
    #[default]
    Collapsed,
    /// `t_ev(2, r, m')` copies of `R` per odd `m'` and `s | m'`, indexed by `nu`.
    NuIndexed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Conventions {
    pub quillen: QuillenConvention,
    pub p2_odd: P2OddConvention,
}

macro_rules! keyword_enum {
    ($ty:ident { $($name:literal => $variant:ident),* $(,)? }) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(text: &str) -> Result<Self> {
                match text {
                    $($name => Ok($ty::$variant),)*
                    _ => Err(Error::Invalid(format!(
                        concat!("unknown ", stringify!($ty), " {:?}"), text))),
                }
            }
        }
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($ty::$variant => $name,)* }
            }
        }
    };
}

keyword_enum!(QuillenConvention { "standard" => Standard, "paper" => Shifted });
keyword_enum!(P2OddConvention { "collapsed" => Collapsed, "nu-indexed" => NuIndexed });

/// The family of rings being computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// `A_d`.
    #[default]
    Square,
    /// The coordinate axes `C_d`.
    Axes,
    /// The dual numbers `A_1`; `d` is ignored.
    Dual,
    /// `A_d` over a finite field, integral K-groups.
    Integral,
}

keyword_enum!(Variant { "square" => Square, "axes" => Axes, "dual" => Dual, "integral" => Integral });

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IndexSet {
    Words,
    Axes,
}

struct Counts {
    set: IndexSet,
    d: u64,
    memo: HashMap<u64, BigUint>,
}

impl Counts {
    fn get(&mut self, s: u64) -> Result<BigUint> {
        if let Some(c) = self.memo.get(&s) {
            return Ok(c.clone());
        }
        let c = match self.set {
            IndexSet::Words => count_aperiodic(s, self.d)?,
            IndexSet::Axes => count_axes(s, self.d)?,
        };
        self.memo.insert(s, c.clone());
        Ok(c)
    }
}

fn witt_factor(ring: &RingSpec, length: u32, mult: BigUint, prov: Provenance) -> GroupFactor {
    GroupFactor {
        kind: FactorKind::Witt {
            length,
            ring: ring.clone(),
        },
        multiplicity: mult,
        provenance: Some(prov),
    }
}

fn assemble(
    ring: &RingSpec,
    d: u64,
    degree: i64,
    conv: Conventions,
    set: IndexSet,
    bound: u64,
) -> Result<GroupExpr> {
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    crate::numtheory::ensure_prime(ring.prime())?;
    let p = ring.prime();
    let complete = if ring.is_fp_algebra() {
        Completeness::IntegralPPowerTorsion
    } else {
        Completeness::PComplete
    };
    let mut g = GroupExpr::trivial(degree, p, complete);
    if degree <= 0 {
        return Ok(g);
    }
    let r = degree.div_euclid(2);
    let even = degree % 2 == 0;
    let mut counts = Counts {
        set,
        d,
        memo: HashMap::new(),
    };

    for m in 1..=bound {
        if m % p == 0 && p != 2 {
            continue;
        }
        if p == 2 {
            // m' odd in both parities
            if m % 2 == 0 {
                continue;
            }
        } else if even != (m % 2 == 0) || (even && (m / 2) % p == 0) {
            continue;
        }

        if p == 2 && !even {
            let copies: Vec<Option<u32>> = match conv.p2_odd {
                P2OddConvention::Collapsed if t_od(2, r, m) > 0 => vec![Some(0)],
                P2OddConvention::Collapsed => vec![],
                P2OddConvention::NuIndexed => (0..t_ev(2, r, m)).map(Some).collect(),
            };
            if copies.is_empty() {
                continue;
            }
            for s in divisors(m)? {
                let c = counts.get(s)?;
                for &nu in &copies {
                    g.factors.push(witt_factor(
                        ring,
                        1,
                        c.clone(),
                        Provenance { m_prime: m, s, nu },
                    ));
                }
            }
            continue;
        }

        let t = if even { t_ev(p, r, m) } else { t_od(p, r, m) };
        if t == 0 {
            continue;
        }
        let top = (m as u128) * (p as u128).pow(t - 1);
        let top = u64::try_from(top).map_err(|_| Error::Internal("window overflow".into()))?;
        for s in divisors(top)? {
            if even && s % 2 != 0 {
                continue;
            }
            let length = t - vp_unchecked(p, s);
            if length == 0 {
                continue;
            }
            let c = counts.get(s)?;
            g.factors.push(witt_factor(
                ring,
                length,
                c,
                Provenance {
                    m_prime: m,
                    s,
                    nu: None,
                },
            ));
        }
    }
    g.canonicalize();
    Ok(g)
}

/// Relative p-adic K-group `K_degree(A_d, (x_1..x_d))` over `ring`.
pub fn relative_k(ring: &RingSpec, d: u64, degree: i64) -> Result<GroupExpr> {
    relative_k_with(ring, d, degree, Conventions::default())
}

pub fn relative_k_with(
    ring: &RingSpec,
    d: u64,
    degree: i64,
    conv: Conventions,
) -> Result<GroupExpr> {
    let bound = m_prime_bound(ring.prime(), degree);
    assemble(ring, d, degree, conv, IndexSet::Words, bound)
}

/// [`relative_k_with`] with an explicit bound on the `m'` loop.
pub fn relative_k_with_bound(
    ring: &RingSpec,
    d: u64,
    degree: i64,
    conv: Conventions,
    bound: u64,
) -> Result<GroupExpr> {
    assemble(ring, d, degree, conv, IndexSet::Words, bound)
}

/// Relative K-group of the coordinate axes `R[x_1..x_d]/(x_i x_j)_{i != j}`.
pub fn axes_relative_k(ring: &RingSpec, d: u64, degree: i64) -> Result<GroupExpr> {
    axes_relative_k_with(ring, d, degree, Conventions::default())
}

pub fn axes_relative_k_with(
    ring: &RingSpec,
    d: u64,
    degree: i64,
    conv: Conventions,
) -> Result<GroupExpr> {
    let bound = m_prime_bound(ring.prime(), degree);
    assemble(ring, d, degree, conv, IndexSet::Axes, bound)
}

/// Adds `K_degree(F_q)` to a relative group over `F_q`.
fn add_quillen(
    mut g: GroupExpr,
    q: u64,
    degree: i64,
    conv: QuillenConvention,
) -> Result<GroupExpr> {
    if degree < 0 {
        return Err(Error::Invalid(format!(
            "integral K-groups need degree >= 0, got {degree}"
        )));
    }
    let free = |rank| GroupFactor {
        kind: FactorKind::Free { rank },
        multiplicity: BigUint::one(),
        provenance: None,
    };
    if degree == 0 {
        g.factors.push(free(1));
    } else if degree % 2 == 1 {
        let r = (degree - 1) / 2;
        let e = match conv {
            QuillenConvention::Standard => r + 1,
            QuillenConvention::Shifted => r - 1,
        };
        if e < 0 {
            return Err(Error::Invalid(format!(
                "the shifted Quillen exponent is undefined in degree {degree}"
            )));
        }
        if e == 0 {
            g.factors.push(free(1));
        } else {
            let order = Pow::pow(BigUint::from(q), e as u64) - BigUint::one();
            g.factors.push(GroupFactor {
                kind: FactorKind::Cyclic { order },
                multiplicity: BigUint::one(),
                provenance: None,
            });
        }
    }
    g.complete = Completeness::Integral;
    g.canonicalize();
    Ok(g)
}

fn field_order(ring: &RingSpec) -> Result<u64> {
    match ring.as_finite_field() {
        Some((p, f)) => Ok(p.pow(f)),
        None => Err(Error::Invalid(format!(
            "integral K-groups are only available over finite fields, not {}",
            ring.pretty()
        ))),
    }
}

/// Integral `K_degree(A_d)` over `F_q`.
pub fn integral_k_finite_field(q: u64, d: u64, degree: i64) -> Result<GroupExpr> {
    integral_k_finite_field_with(q, d, degree, Conventions::default())
}

pub fn integral_k_finite_field_with(
    q: u64,
    d: u64,
    degree: i64,
    conv: Conventions,
) -> Result<GroupExpr> {
    let ring = RingSpec::finite_field(q)?;
    if degree < 0 {
        return Err(Error::Invalid(format!(
            "integral K-groups need degree >= 0, got {degree}"
        )));
    }
    let rel = relative_k_with(&ring, d, degree, conv)?;
    add_quillen(rel, q, degree, conv.quillen)
}

/// Relative K-group of the dual numbers `R[x]/x^2` with its cross-checks.
pub fn dual_numbers_k(ring: &RingSpec, degree: i64) -> Result<DualNumbers> {
    dual_numbers_k_with(ring, degree, Conventions::default())
}

pub fn dual_numbers_k_with(ring: &RingSpec, degree: i64, conv: Conventions) -> Result<DualNumbers> {
    if degree < 0 {
        return Err(Error::Invalid(format!(
            "dual numbers need degree >= 0, got {degree}"
        )));
    }
    let group = relative_k_with(ring, 1, degree, conv)?;
    let p = ring.prime();
    let odd = degree % 2 == 1;

    let mut h: Vec<(u64, u32)> = Vec::new();
    for f in &group.factors {
        if let (FactorKind::Witt { length, .. }, Some(prov)) = (&f.kind, f.provenance) {
            match h.iter_mut().find(|(m, _)| *m == prov.m_prime) {
                Some((_, len)) => *len += length,
                None => h.push((prov.m_prime, *length)),
            }
        }
    }

    let big_witt = match ring.as_finite_field() {
        Some((_, f)) if odd => {
            let r = ((degree + 1) / 2) as u64;
            Some((big_witt_order(2 * r, p, f)?, big_witt_order(r, p, f)?))
        }
        _ => None,
    };
    let nu_indexed_order = if p == 2 && odd {
        let alt = Conventions {
            p2_odd: P2OddConvention::NuIndexed,
            ..conv
        };
        Some(relative_k_with(ring, 1, degree, alt)?.order())
    } else {
        None
    };
    Ok(DualNumbers {
        group,
        h,
        big_witt,
        nu_indexed_order,
    })
}

/// One K-group for the given variant; `integral` adds the `K(F_q)` summand.
pub fn compute(
    ring: &RingSpec,
    d: u64,
    degree: i64,
    variant: Variant,
    integral: bool,
    conv: Conventions,
) -> Result<GroupExpr> {
    let integral = integral || variant == Variant::Integral;
    let q = if integral {
        Some(field_order(ring)?)
    } else {
        None
    };
    if integral && degree < 0 {
        return Err(Error::Invalid(format!(
            "integral K-groups need degree >= 0, got {degree}"
        )));
    }
    let rel = match variant {
        Variant::Square | Variant::Integral => relative_k_with(ring, d, degree, conv)?,
        Variant::Axes => axes_relative_k_with(ring, d, degree, conv)?,
        Variant::Dual => relative_k_with(ring, 1, degree, conv)?,
    };
    match q {
        Some(q) => add_quillen(rel, q, degree, conv.quillen),
        None => Ok(rel),
    }
}

/// [`compute`] for every degree `0..=max_degree`, in degree order.
pub fn table(
    ring: &RingSpec,
    d: u64,
    max_degree: i64,
    variant: Variant,
    conv: Conventions,
) -> Result<Vec<GroupExpr>> {
    if max_degree < 0 {
        return Err(Error::Invalid(format!(
            "max degree must be >= 0, got {max_degree}"
        )));
    }
    (0..=max_degree)
        .into_par_iter()
        .map(|n| compute(ring, d, n, variant, false, conv))
        .collect()
}
