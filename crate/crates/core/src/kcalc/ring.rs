use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numtheory::{ensure_prime, prime_power};

/// Coefficient ring of the square-zero extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    FiniteField { p: u64, f: u32 },
    PerfectFpAlgebra { p: u64, name: String },
    Perfectoid { p: u64, name: String },
    ZpCyclotomic { p: u64 },
}

impl RingSpec {
    pub fn finite_field(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((p, f)) => Ok(RingSpec::FiniteField { p, f }),
            None => Err(Error::Invalid(format!("{q} is not a prime power"))),
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            RingSpec::FiniteField { p, .. }
            | RingSpec::PerfectFpAlgebra { p, .. }
            | RingSpec::Perfectoid { p, .. }
            | RingSpec::ZpCyclotomic { p } => *p,
        }
    }

    /// `(p, f)` for a finite field, `None` for the symbolic rings.
    pub fn as_finite_field(&self) -> Option<(u64, u32)> {
        match self {
            RingSpec::FiniteField { p, f } => Some((*p, *f)),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.as_finite_field().is_none()
    }

    /// Rings in which every element of a relative K-group is p-power torsion.
    pub(crate) fn is_fp_algebra(&self) -> bool {
        matches!(
            self,
            RingSpec::FiniteField { .. } | RingSpec::PerfectFpAlgebra { .. }
        )
    }

    /// Human-readable name: `F_9`, `k`, `Z_3^cycl`.
    pub fn pretty(&self) -> String {
        match self {
            RingSpec::FiniteField { p, f } => format!("F_{}", p.pow(*f)),
            RingSpec::PerfectFpAlgebra { name, .. } | RingSpec::Perfectoid { name, .. } => {
                name.clone()
            }
            RingSpec::ZpCyclotomic { p } => format!("Z_{p}^cycl"),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            RingSpec::FiniteField { p, f } => format!("\\mathbb{{F}}_{{{}}}", p.pow(*f)),
            RingSpec::PerfectFpAlgebra { name, .. } | RingSpec::Perfectoid { name, .. } => {
                name.clone()
            }
            RingSpec::ZpCyclotomic { p } => format!("\\mathbb{{Z}}_{{{p}}}^{{\\mathrm{{cycl}}}}"),
        }
    }
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_{}^\\".contains(c));
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("bad ring name {name:?}")))
    }
}

fn parse_u64(text: &str, what: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::Invalid(format!("bad {what} {text:?}")))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let ring = match parts.as_slice() {
            ["Fq", q] => RingSpec::finite_field(parse_u64(q, "field order")?)?,
            ["perfect", name, p] => {
                check_name(name)?;
                RingSpec::PerfectFpAlgebra {
                    p: parse_u64(p, "prime")?,
                    name: name.to_string(),
                }
            }
            ["perfectoid", name, p] => {
                check_name(name)?;
                RingSpec::Perfectoid {
                    p: parse_u64(p, "prime")?,
                    name: name.to_string(),
                }
            }
            ["zpcycl", p] => RingSpec::ZpCyclotomic {
                p: parse_u64(p, "prime")?,
            },
            _ => {
                return Err(Error::Invalid(format!(
                    "ring {text:?} is not one of Fq:<q>, perfect:<name>:<p>, \
                     perfectoid:<name>:<p>, zpcycl:<p>"
                )))
            }
        };
        ensure_prime(ring.prime())?;
        Ok(ring)
    }
}

/// The parseable form, e.g. `Fq:9` or `perfect:k:3`.
impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::FiniteField { p, f: deg } => write!(f, "Fq:{}", p.pow(*deg)),
            RingSpec::PerfectFpAlgebra { p, name } => write!(f, "perfect:{name}:{p}"),
            RingSpec::Perfectoid { p, name } => write!(f, "perfectoid:{name}:{p}"),
            RingSpec::ZpCyclotomic { p } => write!(f, "zpcycl:{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for text in [
            "Fq:3",
            "Fq:9",
            "Fq:2",
            "perfect:k:3",
            "perfectoid:R:2",
            "zpcycl:5",
        ] {
            let ring: RingSpec = text.parse().unwrap();
            assert_eq!(ring.to_string(), text);
        }
        assert_eq!(
            "Fq:9".parse::<RingSpec>().unwrap(),
            RingSpec::FiniteField { p: 3, f: 2 }
        );
        assert_eq!("Fq:9".parse::<RingSpec>().unwrap().pretty(), "F_9");
        assert_eq!("zpcycl:3".parse::<RingSpec>().unwrap().pretty(), "Z_3^cycl");
        assert_eq!("perfect:k:3".parse::<RingSpec>().unwrap().pretty(), "k");
    }

    #[test]
    fn rejects_bad_rings() {
        for text in [
            "Fq:6",
            "Fq:1",
            "Fq:x",
            "perfect:k:4",
            "zpcycl:1",
            "Fp:3",
            "perfect::3",
            "perfect:a b:3",
            "",
        ] {
            assert!(text.parse::<RingSpec>().is_err(), "{text}");
        }
    }
}
