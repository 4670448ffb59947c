//! Brute-force verifiers. None of them asks the formula under test for its
//! own answer: counts come from enumeration, unit groups from multiplying
//! out ring elements, Witt identities from random and exhaustive trials.

use std::env;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kcalc::{relative_k, Order, RingSpec};
use crate::numtheory::{divisors, ensure_prime};
use crate::witt::{
    big_witt_order, ghost, iso_with_zpn, witt_polys, FiniteField, FqElem, WittRing, WittVector,
    DEFAULT_ISO_BUDGET,
};
use crate::words::{
    count_aperiodic, count_axes, enumerate_aperiodic, enumerate_axes, DEFAULT_WORD_BUDGET,
};

/// Default cap on `q^(d+1)` for the unit-group enumeration.
pub const DEFAULT_RING_BUDGET: u64 = 1_000_000;

/// Enumeration limits. `KAX_BUDGET` replaces all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub words: u64,
    pub ring: u64,
    pub iso: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            words: DEFAULT_WORD_BUDGET,
            ring: DEFAULT_RING_BUDGET,
            iso: DEFAULT_ISO_BUDGET,
        }
    }
}

impl Budget {
    pub fn uniform(limit: u64) -> Self {
        Budget {
            words: limit,
            ring: limit,
            iso: limit,
        }
    }

    pub fn from_env() -> Result<Self> {
        match env::var("KAX_BUDGET") {
            Ok(text) => text
                .trim()
                .parse()
                .map(Budget::uniform)
                .map_err(|_| Error::Invalid(format!("KAX_BUDGET={text:?} is not a number"))),
            Err(_) => Ok(Budget::default()),
        }
    }
}

/// An element `a + u_1 x_1 + ... + u_d x_d` of `F_q[x_1..x_d]/(x)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRingElem {
    pub constant: FqElem,
    pub linear: Vec<FqElem>,
}

impl FiniteRingElem {
    pub fn mul(&self, other: &Self, field: &FiniteField) -> Self {
        let linear = self
            .linear
            .iter()
            .zip(&other.linear)
            .map(|(u, v)| {
                field.add(
                    &field.mul(&self.constant, v),
                    &field.mul(&other.constant, u),
                )
            })
            .collect();
        FiniteRingElem {
            constant: field.mul(&self.constant, &other.constant),
            linear,
        }
    }

    fn decode(code: u64, d: usize, field: &FiniteField) -> Self {
        let q = field.order();
        let mut rest = code;
        let mut digits = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            digits.push(field.element(rest % q));
            rest /= q;
        }
        let constant = digits.remove(0);
        FiniteRingElem {
            constant,
            linear: digits,
        }
    }

    fn is_one(&self, field: &FiniteField) -> bool {
        self.constant == field.one() && self.linear.iter().all(FqElem::is_zero)
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(FqElem::is_zero)
    }
}

/// Whether some power of `x` is 1, found by multiplying out.
fn reaches_one(x: &FiniteRingElem, field: &FiniteField, max_steps: u64) -> Option<bool> {
    let mut y = x.clone();
    for _ in 0..max_steps {
        if y.is_one(field) {
            return Some(true);
        }
        if y.is_zero() {
            return Some(false);
        }
        y = y.mul(x, field);
    }
    None
}

/// Order of `1 + m` in `F_q[x_1..x_d]/(x)^2`, `q = p^f`, by enumeration.
///
/// Every element is multiplied out until it reaches 1 (a unit) or 0 (nilpotent).
/// Also checks that the units number `(q - 1)·|1 + m|`.
pub fn k1_units(p: u64, f: u32, d: u64, budget: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    let field = FiniteField::new(p, f)?;
    let q = field.order();
    let size = q
        .checked_pow(d as u32 + 1)
        .filter(|&s| s <= budget)
        .ok_or_else(|| Error::Budget {
            what: "unit group enumeration",
            needed: format!("{q}^{}", d + 1),
            limit: budget,
        })?;
    let d = d as usize;
    let (principal, units) = (0..size)
        .into_par_iter()
        .map(|code| {
            let x = FiniteRingElem::decode(code, d, &field);
            let principal = x.constant == field.one();
            match reaches_one(&x, &field, size + 1) {
                Some(true) => Ok((principal as u64, 1u64)),
                Some(false) if principal => Err(Error::Internal(format!(
                    "{code} lies in 1 + m but is nilpotent"
                ))),
                Some(false) => Ok((0, 0)),
                None if principal => Err(Error::Internal(format!(
                    "element {code} of 1 + m has no inverse among its powers"
                ))),
                None => Ok((0, 0)),
            }
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    if units != (q - 1) * principal {
        return Err(Error::Internal(format!(
            "{units} units but {principal} principal units over F_{q}"
        )));
    }
    Ok(BigUint::from(principal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub check: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Entry {
    fn new(check: &str, params: Value, witness: Option<String>) -> Self {
        let status = if witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Entry {
            check: check.to_string(),
            params,
            status,
            witness,
        }
    }

    fn from_result(check: &str, params: Value, outcome: Result<Option<String>>) -> Self {
        match outcome {
            Ok(w) => Entry::new(check, params, w),
            Err(e) => Entry::new(check, params, Some(e.to_string())),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let params: Vec<String> = self
            .params
            .as_object()
            .map(|o| o.iter().map(|(k, v)| format!("{k}={v}")).collect())
            .unwrap_or_default();
        write!(f, "{status} {} {}", self.check, params.join(" "))?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.entries.iter().map(|e| format!("{e}\n")).collect();
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.entries.len(),
            self.entries.len() - failed,
            failed
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("report serializes")
    }
}

/// Word counts against enumeration for every `s <= s_max`, `d <= d_max`,
/// plus the identity `sum_{s | m} s·|omega_{s,d}| = d^m`.
pub fn check_counts(s_max: u64, d_max: u64, budget: &Budget) -> Report {
    let cells: Vec<(u64, u64)> = (1..=s_max)
        .flat_map(|s| (1..=d_max).map(move |d| (s, d)))
        .collect();
    let mut entries: Vec<Entry> = cells
        .iter()
        .map(|&(s, d)| {
            let outcome = (|| {
                let mut bad = Vec::new();
                let (count, found) = (
                    count_aperiodic(s, d)?,
                    enumerate_aperiodic(s, d, budget.words)?.len(),
                );
                if count != BigUint::from(found) {
                    bad.push(format!("omega count {count}, enumeration {found}"));
                }
                let (count, found) = (count_axes(s, d)?, enumerate_axes(s, d, budget.words)?.len());
                if count != BigUint::from(found) {
                    bad.push(format!("axes count {count}, enumeration {found}"));
                }
                Ok((!bad.is_empty()).then(|| bad.join("; ")))
            })();
            Entry::from_result("counts", json!({"s": s, "d": d}), outcome)
        })
        .collect();
    for &(m, d) in &cells {
        let outcome = (|| {
            let mut total = BigUint::from(0u32);
            for s in divisors(m)? {
                total += count_aperiodic(s, d)? * s;
            }
            let want = BigUint::from(d).pow(m as u32);
            Ok((total != want).then(|| format!("sum {total}, d^m = {want}")))
        })();
        entries.push(Entry::from_result(
            "partition",
            json!({"m": m, "d": d}),
            outcome,
        ));
    }
    Report { entries }
}

fn ring_axioms(ring: &WittRing, trials: usize, seed: u64) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (zero, one) = (ring.zero(), ring.one());
    for _ in 0..trials {
        let (a, b, c) = (
            ring.random(&mut rng),
            ring.random(&mut rng),
            ring.random(&mut rng),
        );
        let laws: [(&str, WittVector, WittVector); 8] = [
            (
                "(a+b)+c = a+(b+c)",
                ring.add(&ring.add(&a, &b)?, &c)?,
                ring.add(&a, &ring.add(&b, &c)?)?,
            ),
            (
                "(ab)c = a(bc)",
                ring.mul(&ring.mul(&a, &b)?, &c)?,
                ring.mul(&a, &ring.mul(&b, &c)?)?,
            ),
            ("a+b = b+a", ring.add(&a, &b)?, ring.add(&b, &a)?),
            ("ab = ba", ring.mul(&a, &b)?, ring.mul(&b, &a)?),
            (
                "a(b+c) = ab+ac",
                ring.mul(&a, &ring.add(&b, &c)?)?,
                ring.add(&ring.mul(&a, &b)?, &ring.mul(&a, &c)?)?,
            ),
            ("a+0 = a", ring.add(&a, &zero)?, a.clone()),
            ("a·1 = a", ring.mul(&a, &one)?, a.clone()),
            ("a+(-a) = 0", ring.add(&a, &ring.neg(&a)?)?, zero.clone()),
        ];
        for (law, lhs, rhs) in laws {
            if lhs != rhs {
                return Ok(Some(format!("{law} fails for a=({a}) b=({b}) c=({c})")));
            }
        }
    }
    Ok(None)
}

fn ghost_identities(p: u64, n: usize, trials: usize, seed: u64) -> Result<Option<String>> {
    let set = witt_polys(p, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
            .collect();
        let y: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
            .collect();
        let xy: Vec<BigInt> = x.iter().chain(&y).cloned().collect();
        let eval = |polys: &[crate::witt::IntPoly], at: &[BigInt]| -> Vec<BigInt> {
            polys.iter().map(|q| q.eval(at)).collect()
        };
        let (gs, gp, gn) = (
            ghost(p, &eval(set.sum(), &xy)),
            ghost(p, &eval(set.prod(), &xy)),
            ghost(p, &eval(set.neg(), &x)),
        );
        let (gx, gy) = (ghost(p, &x), ghost(p, &y));
        for i in 0..n {
            if gs[i] != &gx[i] + &gy[i] || gp[i] != &gx[i] * &gy[i] || gn[i] != -&gx[i] {
                let show = |v: &[BigInt]| {
                    v.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                return Ok(Some(format!(
                    "ghost component {i} fails at x=({}) y=({})",
                    show(&x),
                    show(&y)
                )));
            }
        }
    }
    Ok(None)
}

/// Ring axioms, ghost identities and `Z/p^n = W_n(F_p)` for each `p`,
/// `n <= n_max`, `f <= f_max`.
pub fn check_witt(
    p_set: &[u64],
    n_max: usize,
    f_max: u32,
    trials: usize,
    budget: &Budget,
) -> Report {
    let mut jobs: Vec<(&str, u64, usize, u32)> = Vec::new();
    for &p in p_set {
        for n in 1..=n_max {
            for f in 1..=f_max {
                jobs.push(("witt-axioms", p, n, f));
            }
            jobs.push(("witt-ghost", p, n, 0));
            jobs.push(("witt-iso", p, n, 0));
        }
    }
    let mut entries: Vec<Entry> = jobs
        .par_iter()
        .map(|&(check, p, n, f)| {
            let seed = p * 1_000 + n as u64 * 10 + f as u64;
            match check {
                "witt-axioms" => Entry::from_result(
                    check,
                    json!({"p": p, "n": n, "f": f}),
                    WittRing::new(p, f, n).and_then(|ring| ring_axioms(&ring, trials, seed)),
                ),
                "witt-ghost" => Entry::from_result(
                    check,
                    json!({"p": p, "n": n}),
                    ghost_identities(p, n, trials, seed),
                ),
                _ => Entry::from_result(
                    check,
                    json!({"p": p, "n": n}),
                    iso_with_zpn(p, n, budget.iso).map(|_| None),
                ),
            }
        })
        .collect();
    if p_set.contains(&2) && n_max >= 2 {
        let outcome = (|| {
            let ring = WittRing::new(2, 1, 2)?;
            let one = ring.one();
            let sum = ring.add(&one, &one)?;
            let want = ring.vector(vec![ring.field().zero(), ring.field().one()])?;
            Ok((sum != want).then(|| format!("(1,0)+(1,0) = ({sum})")))
        })();
        entries.push(Entry::from_result(
            "witt-example",
            json!({"p": 2, "n": 2}),
            outcome,
        ));
    }
    Report { entries }
}

/// `order(relative_k(F_q, d, 1))` against the enumerated `|1 + m|`.
pub fn check_k1(qs: &[u64], d_max: u64, budget: &Budget) -> Report {
    let cells: Vec<(u64, u64)> = qs
        .iter()
        .flat_map(|&q| (1..=d_max).map(move |d| (q, d)))
        .collect();
    let entries = cells
        .par_iter()
        .map(|&(q, d)| {
            let outcome = (|| {
                let ring = RingSpec::finite_field(q)?;
                let (p, f) = ring.as_finite_field().expect("finite field");
                let units = k1_units(p, f, d, budget.ring)?;
                let formula = relative_k(&ring, d, 1)?.order();
                Ok((formula != Order::Finite(units.clone()))
                    .then(|| format!("formula order {formula}, enumerated {units}")))
            })();
            Entry::from_result("k1", json!({"q": q, "d": d}), outcome)
        })
        .collect();
    Report { entries }
}

/// `|K_{2i-1}(F_p[x]/x^2, (x))| · |W_i(F_p)| = |W_2i(F_p)|` (big Witt vectors).
pub fn check_dual_numbers(p_set: &[u64], i_max: u64) -> Report {
    let mut entries = Vec::new();
    for &p in p_set {
        for i in 1..=i_max {
            let outcome = (|| {
                ensure_prime(p)?;
                let ring = RingSpec::FiniteField { p, f: 1 };
                let order = match relative_k(&ring, 1, 2 * i as i64 - 1)?.order() {
                    Order::Finite(n) => n,
                    other => return Ok(Some(format!("order is {other}"))),
                };
                let (top, bottom) = (big_witt_order(2 * i, p, 1)?, big_witt_order(i, p, 1)?);
                Ok((&order * &bottom != top).then(|| format!("{order}·{bottom} != {top}")))
            })();
            entries.push(Entry::from_result("dual", json!({"p": p, "i": i}), outcome));
        }
    }
    Report { entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Witt,
    K1,
    Dual,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "counts" => Ok(Suite::Counts),
            "witt" => Ok(Suite::Witt),
            "k1" => Ok(Suite::K1),
            "dual" => Ok(Suite::Dual),
            "all" | "" => Ok(Suite::All),
            _ => Err(Error::Invalid(format!("unknown suite {text:?}"))),
        }
    }
}

/// Runs a suite on its default grid.
pub fn run_suite(suite: Suite, budget: &Budget) -> Report {
    let mut report = Report::default();
    if matches!(suite, Suite::Counts | Suite::All) {
        report.extend(check_counts(12, 3, budget));
    }
    if matches!(suite, Suite::Witt | Suite::All) {
        report.extend(check_witt(&[2, 3, 5], 3, 2, 100, budget));
    }
    if matches!(suite, Suite::K1 | Suite::All) {
        report.extend(check_k1(&[2, 3, 4, 5, 9], 3, budget));
    }
    if matches!(suite, Suite::Dual | Suite::All) {
        report.extend(check_dual_numbers(&[2, 3, 5], 5));
    }
    report
}
