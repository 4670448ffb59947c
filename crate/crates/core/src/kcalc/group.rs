use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use super::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `W_length(ring)`, length at least 1.
    Witt { length: u32, ring: RingSpec },
    /// `Z/order`, order at least 2.
    Cyclic { order: BigUint },
    /// `Z^rank`.
    Free { rank: u64 },
}

/// Index triple a relative factor came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    pub m_prime: u64,
    pub s: u64,
    pub nu: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupFactor {
    pub kind: FactorKind,
    pub multiplicity: BigUint,
    pub provenance: Option<Provenance>,
}

impl GroupFactor {
    fn order(&self) -> Order {
        match &self.kind {
            FactorKind::Witt { length, ring } => match ring.as_finite_field() {
                Some((p, f)) => {
                    let e = &self.multiplicity * BigUint::from(*length as u64 * f as u64);
                    Order::Finite(pow_big(p, &e))
                }
                None => Order::Symbolic,
            },
            FactorKind::Cyclic { order } => Order::Finite(Pow::pow(order, &self.multiplicity)),
            FactorKind::Free { rank } => {
                if *rank == 0 || self.multiplicity.is_zero() {
                    Order::Finite(BigUint::one())
                } else {
                    Order::Infinite
                }
            }
        }
    }
}

fn pow_big(base: u64, e: &BigUint) -> BigUint {
    Pow::pow(&BigUint::from(base), e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completeness {
    PComplete,
    Integral,
    /// Integral, and every element is p-power torsion.
    IntegralPPowerTorsion,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::PComplete => "p-complete",
            Completeness::Integral | Completeness::IntegralPPowerTorsion => "integral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigUint),
    Infinite,
    Symbolic,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
            Order::Symbolic => f.write_str("symbolic"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupExpr {
    pub degree: i64,
    pub p: u64,
    pub complete: Completeness,
    pub factors: Vec<GroupFactor>,
}

impl GroupExpr {
    pub fn trivial(degree: i64, p: u64, complete: Completeness) -> Self {
        let mut g = GroupExpr {
            degree,
            p,
            complete,
            factors: Vec::new(),
        };
        g.canonicalize();
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sorts factors (unindexed first, then by `m'`, `s`, `nu`), drops empty
    /// ones and fixes the completeness tag of integral expressions.
    pub fn canonicalize(&mut self) {
        self.factors.retain(|f| {
            !f.multiplicity.is_zero()
                && match &f.kind {
                    FactorKind::Witt { length, .. } => *length > 0,
                    FactorKind::Cyclic { order } => !order.is_one(),
                    FactorKind::Free { rank } => *rank > 0,
                }
        });
        self.factors.sort_by(|a, b| {
            (a.provenance.is_some(), a.provenance, &a.kind).cmp(&(
                b.provenance.is_some(),
                b.provenance,
                &b.kind,
            ))
        });
        if self.complete != Completeness::PComplete {
            let torsion = self
                .factors
                .iter()
                .all(|f| matches!(f.kind, FactorKind::Witt { .. }));
            self.complete = if torsion {
                Completeness::IntegralPPowerTorsion
            } else {
                Completeness::Integral
            };
        }
    }

    pub fn order(&self) -> Order {
        let mut total = BigUint::one();
        let mut infinite = false;
        for f in &self.factors {
            match f.order() {
                Order::Finite(n) => total *= n,
                Order::Infinite => infinite = true,
                Order::Symbolic => return Order::Symbolic,
            }
        }
        if infinite {
            Order::Infinite
        } else {
            Order::Finite(total)
        }
    }

    /// Identical factor kinds merged, in display order: free, cyclic, Witt.
    pub fn aggregated(&self) -> Vec<(FactorKind, BigUint)> {
        let mut out: Vec<(FactorKind, BigUint)> = Vec::new();
        for f in &self.factors {
            match out.iter_mut().find(|(k, _)| *k == f.kind) {
                Some((_, m)) => *m += &f.multiplicity,
                None => out.push((f.kind.clone(), f.multiplicity.clone())),
            }
        }
        out.sort_by(|a, b| display_key(&a.0).cmp(&display_key(&b.0)));
        out
    }
}

fn display_key(k: &FactorKind) -> (u8, Option<&RingSpec>, Option<&BigUint>, u64) {
    match k {
        FactorKind::Free { rank } => (0, None, None, *rank),
        FactorKind::Cyclic { order } => (1, None, Some(order), 0),
        FactorKind::Witt { length, ring } => (2, Some(ring), None, *length as u64),
    }
}

/// Relative K-group of the dual numbers together with the cross-checks
/// against the big Witt vector presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualNumbers {
    pub group: GroupExpr,
    /// `(m', h(m'))` for every nonzero length.
    pub h: Vec<(u64, u32)>,
    /// For odd degree `2r-1` over a finite field: `(|W_2r|, |W_r|)` of the big Witt vectors.
    pub big_witt: Option<(BigUint, BigUint)>,
    /// For `p = 2`, odd degree: the order under the nu-indexed reading.
    pub nu_indexed_order: Option<Order>,
}

impl DualNumbers {
    /// The big-Witt quotient order agrees with the group order (vacuous when there is no quotient).
    pub fn big_witt_consistent(&self) -> bool {
        match &self.big_witt {
            Some((num, den)) => {
                den * match self.group.order() {
                    Order::Finite(n) => n,
                    _ => return false,
                } == *num
            }
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt(length: u32, q: u64, m: u64) -> GroupFactor {
        GroupFactor {
            kind: FactorKind::Witt {
                length,
                ring: RingSpec::finite_field(q).unwrap(),
            },
            multiplicity: BigUint::from(m),
            provenance: Some(Provenance {
                m_prime: 1,
                s: 1,
                nu: None,
            }),
        }
    }

    #[test]
    fn orders() {
        let g = GroupExpr::trivial(0, 3, Completeness::PComplete);
        assert_eq!(g.order(), Order::Finite(BigUint::one()));

        let mut g = GroupExpr {
            degree: 3,
            p: 3,
            complete: Completeness::IntegralPPowerTorsion,
            factors: vec![witt(2, 3, 1), witt(1, 3, 1)],
        };
        g.canonicalize();
        assert_eq!(g.order(), Order::Finite(BigUint::from(27u32)));

        g.factors.push(GroupFactor {
            kind: FactorKind::Free { rank: 1 },
            multiplicity: BigUint::one(),
            provenance: None,
        });
        g.canonicalize();
        assert_eq!(g.complete, Completeness::Integral);
        assert_eq!(g.order(), Order::Infinite);

        let k = GroupFactor {
            kind: FactorKind::Witt {
                length: 1,
                ring: RingSpec::PerfectFpAlgebra {
                    p: 3,
                    name: "k".into(),
                },
            },
            multiplicity: BigUint::one(),
            provenance: None,
        };
        let g = GroupExpr {
            degree: 1,
            p: 3,
            complete: Completeness::PComplete,
            factors: vec![k],
        };
        assert_eq!(g.order(), Order::Symbolic);
    }

    #[test]
    fn canonicalize_prunes() {
        let mut g = GroupExpr {
            degree: 1,
            p: 2,
            complete: Completeness::Integral,
            factors: vec![
                witt(0, 2, 1),
                witt(1, 2, 0),
                GroupFactor {
                    kind: FactorKind::Cyclic {
                        order: BigUint::one(),
                    },
                    multiplicity: BigUint::one(),
                    provenance: None,
                },
            ],
        };
        g.canonicalize();
        assert!(g.is_trivial());
        assert_eq!(g.complete, Completeness::IntegralPPowerTorsion);
    }

    #[test]
    fn aggregation_merges_kinds() {
        let mut a = witt(1, 3, 2);
        a.provenance = Some(Provenance {
            m_prime: 1,
            s: 1,
            nu: None,
        });
        let mut b = witt(1, 3, 3);
        b.provenance = Some(Provenance {
            m_prime: 5,
            s: 5,
            nu: None,
        });
        let g = GroupExpr {
            degree: 9,
            p: 3,
            complete: Completeness::PComplete,
            factors: vec![a, b, witt(2, 3, 1)],
        };
        let agg = g.aggregated();
        assert_eq!(agg.len(), 2);
        assert_eq!(agg[0].1, BigUint::from(5u32));
    }
}
