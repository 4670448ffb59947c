use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::group::{Completeness, FactorKind, GroupExpr, GroupFactor, Order, Provenance};
use super::ring::RingSpec;
use crate::error::{Error, Result};

/// Orders up to this many bits are printed in full.
pub const DECIMAL_ORDER_BITS: u64 = 256;

fn power(base: String, exp: &BigUint) -> String {
    if exp.is_one() {
        base
    } else {
        format!("{base}^{exp}")
    }
}

fn latex_power(base: String, exp: &BigUint) -> String {
    if exp.is_one() {
        base
    } else if base.contains('^') {
        format!("({base})^{{{exp}}}")
    } else {
        format!("{base}^{{{exp}}}")
    }
}

impl FactorKind {
    /// One copy of the factor: `F_3`, `W_2(F_3)`, `Z/26`, `Z^2`.
    pub fn to_text(&self) -> String {
        match self {
            FactorKind::Witt { length: 1, ring } => ring.pretty(),
            FactorKind::Witt { length, ring } => format!("W_{length}({})", ring.pretty()),
            FactorKind::Cyclic { order } => format!("Z/{order}"),
            FactorKind::Free { rank } => power("Z".into(), &BigUint::from(*rank)),
        }
    }
}

impl GroupExpr {
    /// `F_3^2 (order 9)`, `Z/2 × F_3 (order 6)`, `Z`, or `0`.
    pub fn to_text(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .aggregated()
            .into_iter()
            .map(|(kind, mult)| match kind {
                FactorKind::Free { rank } => power("Z".into(), &(mult * BigUint::from(rank))),
                other => power(other.to_text(), &mult),
            })
            .collect();
        let body = parts.join(" × ");
        match self.order_text() {
            Some(n) => format!("{body} (order {n})"),
            None => body,
        }
    }

    /// The order in decimal, or as `c·p^E` once `p^E` passes [`DECIMAL_ORDER_BITS`].
    /// `None` for infinite and symbolic groups.
    pub fn order_text(&self) -> Option<String> {
        let mut exponent = BigUint::from(0u32);
        let mut rest = BigUint::one();
        for f in &self.factors {
            match &f.kind {
                FactorKind::Witt { length, ring } => {
                    let (p, deg) = ring.as_finite_field()?;
                    if p != self.p {
                        return match self.order() {
                            Order::Finite(n) => Some(n.to_string()),
                            _ => None,
                        };
                    }
                    exponent += &f.multiplicity * BigUint::from(*length as u64 * deg as u64);
                }
                FactorKind::Cyclic { order } => rest *= Pow::pow(order, &f.multiplicity),
                FactorKind::Free { .. } => return None,
            }
        }
        let bits = exponent.clone() * BigUint::from(64 - self.p.leading_zeros());
        if bits <= BigUint::from(DECIMAL_ORDER_BITS) {
            let e = u32::try_from(&exponent).expect("small exponent");
            return Some((rest * BigUint::from(self.p).pow(e)).to_string());
        }
        let power = format!("{}^{exponent}", self.p);
        Some(if rest.is_one() {
            power
        } else {
            format!("{rest}·{power}")
        })
    }

    pub fn to_latex(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        self.aggregated()
            .into_iter()
            .map(|(kind, mult)| match kind {
                FactorKind::Witt { length: 1, ring } => latex_power(ring.latex(), &mult),
                FactorKind::Witt { length, ring } => {
                    latex_power(format!("W_{{{length}}}({})", ring.latex()), &mult)
                }
                FactorKind::Cyclic { order } => {
                    let base = format!("\\mathbb{{Z}}/{order}");
                    if mult.is_one() {
                        base
                    } else {
                        format!("(\\mathbb{{Z}}/{order})^{{{mult}}}")
                    }
                }
                FactorKind::Free { rank } => {
                    latex_power("\\mathbb{Z}".into(), &(mult * BigUint::from(rank)))
                }
            })
            .collect::<Vec<_>>()
            .join(" \\times ")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(JsonExpr::from(self)).expect("group expression serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonExpr::from(self)).expect("group expression serializes")
    }

    /// Pretty JSON array of several groups, fields in schema order.
    pub fn list_to_json(groups: &[GroupExpr]) -> String {
        let raw: Vec<JsonExpr> = groups.iter().map(JsonExpr::from).collect();
        serde_json::to_string_pretty(&raw).expect("group expressions serialize")
    }

    pub fn list_from_json(text: &str) -> Result<Vec<GroupExpr>> {
        let raw: Vec<JsonExpr> = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("bad group JSON: {e}")))?;
        raw.into_iter().map(GroupExpr::try_from).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: JsonExpr = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("bad group JSON: {e}")))?;
        raw.try_into()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let raw: JsonExpr = serde_json::from_value(value)
            .map_err(|e| Error::Invalid(format!("bad group JSON: {e}")))?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonExpr {
    degree: i64,
    p: u64,
    complete: String,
    factors: Vec<JsonFactor>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFactor {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<u64>,
    multiplicity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<JsonProvenance>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonProvenance {
    m_prime: u64,
    s: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<u32>,
}

impl From<&GroupExpr> for JsonExpr {
    fn from(g: &GroupExpr) -> Self {
        JsonExpr {
            degree: g.degree,
            p: g.p,
            complete: g.complete.as_str().to_string(),
            factors: g.factors.iter().map(JsonFactor::from).collect(),
        }
    }
}

impl From<&GroupFactor> for JsonFactor {
    fn from(f: &GroupFactor) -> Self {
        let mut out = JsonFactor {
            kind: String::new(),
            length: None,
            ring: None,
            order: None,
            rank: None,
            multiplicity: f.multiplicity.to_string(),
            provenance: f.provenance.map(|p| JsonProvenance {
                m_prime: p.m_prime,
                s: p.s,
                nu: p.nu,
            }),
        };
        match &f.kind {
            FactorKind::Witt { length, ring } => {
                out.kind = "witt".into();
                out.length = Some(*length);
                out.ring = Some(ring.to_string());
            }
            FactorKind::Cyclic { order } => {
                out.kind = "cyclic".into();
                out.order = Some(order.to_string());
            }
            FactorKind::Free { rank } => {
                out.kind = "free".into();
                out.rank = Some(*rank);
            }
        }
        out
    }
}

fn big(text: &str, what: &str) -> Result<BigUint> {
    text.parse()
        .map_err(|_| Error::Invalid(format!("bad {what} {text:?}")))
}

fn missing(what: &str) -> Error {
    Error::Invalid(format!("factor is missing {what}"))
}

impl TryFrom<JsonFactor> for GroupFactor {
    type Error = Error;

    fn try_from(f: JsonFactor) -> Result<Self> {
        let kind = match f.kind.as_str() {
            "witt" => FactorKind::Witt {
                length: f.length.ok_or_else(|| missing("length"))?,
                ring: f.ring.ok_or_else(|| missing("ring"))?.parse::<RingSpec>()?,
            },
            "cyclic" => FactorKind::Cyclic {
                order: big(&f.order.ok_or_else(|| missing("order"))?, "order")?,
            },
            "free" => FactorKind::Free {
                rank: f.rank.ok_or_else(|| missing("rank"))?,
            },
            other => return Err(Error::Invalid(format!("unknown factor kind {other:?}"))),
        };
        Ok(GroupFactor {
            kind,
            multiplicity: big(&f.multiplicity, "multiplicity")?,
            provenance: f.provenance.map(|p| Provenance {
                m_prime: p.m_prime,
                s: p.s,
                nu: p.nu,
            }),
        })
    }
}

impl TryFrom<JsonExpr> for GroupExpr {
    type Error = Error;

    fn try_from(raw: JsonExpr) -> Result<Self> {
        let complete = match raw.complete.as_str() {
            "p-complete" => Completeness::PComplete,
            "integral" => Completeness::Integral,
            other => return Err(Error::Invalid(format!("unknown completeness {other:?}"))),
        };
        let factors = raw
            .factors
            .into_iter()
            .map(GroupFactor::try_from)
            .collect::<Result<Vec<_>>>()?;
        let mut g = GroupExpr {
            degree: raw.degree,
            p: raw.p,
            complete,
            factors,
        };
        g.canonicalize();
        Ok(g)
    }
}
