//! Cyclic words: periods, least rotations, and counting/enumerating the
//! rotation orbits of exact period `s` (all words, and words with no two
//! cyclically adjacent equal letters).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, mobius};

/// Default cap on the size `d^s` of a scanned word space.
pub const DEFAULT_WORD_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
    alphabet: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::NonPositive("alphabet size"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(Error::Invalid(format!(
                "letter {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Word { letters, alphabet })
    }

    /// Parses `a`..`z` letters.
    pub fn parse(text: &str, alphabet: u32) -> Result<Self> {
        let letters = text
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(c as u32 - 'a' as u32),
                _ => Err(Error::Invalid(format!("bad letter {c:?} in {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, alphabet)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    /// Letters written `x1`, `x2`, ... as in printed reports.
    pub fn report_form(&self) -> String {
        self.letters.iter().map(|l| format!("x{}", l + 1)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet <= 26 {
            for &l in &self.letters {
                write!(f, "{}", char::from(b'a' + l as u8))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// A rotation orbit, stored as its lexicographically least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    canonical: Word,
    period: usize,
}

impl CyclicWord {
    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn period(&self) -> usize {
        self.period
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

fn period_of(letters: &[u32]) -> usize {
    let m = letters.len();
    (1..=m)
        .find(|&s| m.is_multiple_of(s) && (0..m).all(|i| letters[i] == letters[(i + s) % m]))
        .unwrap_or(m)
}

/// Smallest `s | m` such that rotating by `s` fixes the word.
pub fn period(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::Invalid("period of the empty word".into()));
    }
    Ok(period_of(&w.letters))
}

/// Start index of the least rotation (Booth's algorithm).
fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let at = |i: isize| s[i as usize % n];
    let mut fail = vec![-1isize; 2 * n];
    let mut k: isize = 0;
    for j in 1..(2 * n) as isize {
        let sj = at(j);
        let mut i = fail[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[(j - k) as usize] = -1;
        } else {
            fail[(j - k) as usize] = i + 1;
        }
    }
    k as usize % n
}

pub fn canonicalize(w: &Word) -> Result<CyclicWord> {
    let period = period(w)?;
    let canonical = w.rotate(least_rotation(&w.letters));
    Ok(CyclicWord { canonical, period })
}

fn mobius_orbit_count(s: u64, what: &str, seq: impl Fn(u64) -> BigInt) -> Result<BigUint> {
    if s == 0 {
        return Err(Error::NonPositive("s"));
    }
    let mut total = BigInt::zero();
    for u in divisors(s)? {
        match mobius(s / u)? {
            0 => {}
            mu => total += seq(u) * BigInt::from(mu),
        }
    }
    let s_big = BigInt::from(s);
    if total.is_negative() || !(&total % &s_big).is_zero() {
        return Err(Error::Internal(format!(
            "{what}: Möbius sum {total} is not a non-negative multiple of {s}"
        )));
    }
    Ok((total / s_big).magnitude().clone())
}

/// Number of rotation orbits of length-`s` words on `d` letters with period exactly `s`.
pub fn count_aperiodic(s: u64, d: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    mobius_orbit_count(s, "count_aperiodic", |u| BigInt::from(d).pow(u as u32))
}

/// Proper colourings of a `u`-cycle with `d` colours.
fn cycle_colourings(u: u64, d: u64) -> BigInt {
    let dm1 = BigInt::from(d) - BigInt::one();
    let sign = if u.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    dm1.pow(u as u32) + sign * dm1
}

/// Like [`count_aperiodic`], restricted to words with no two cyclically adjacent equal letters.
pub fn count_axes(s: u64, d: u64) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    mobius_orbit_count(s, "count_axes", |u| cycle_colourings(u, d))
}

fn word_space(s: u64, d: u64, budget: u64) -> Result<u64> {
    if s == 0 {
        return Err(Error::NonPositive("s"));
    }
    if d == 0 {
        return Err(Error::NonPositive("d"));
    }
    let size = u32::try_from(s)
        .ok()
        .and_then(|e| d.checked_pow(e))
        .filter(|&n| n <= budget);
    size.ok_or_else(|| Error::Budget {
        what: "word enumeration",
        needed: format!("{d}^{s}"),
        limit: budget,
    })
}

/// True iff `w` is strictly smaller than every non-trivial rotation, i.e. it
/// is the canonical representative of an orbit of full period.
fn is_primitive_least(w: &[u32]) -> bool {
    let m = w.len();
    (1..m).all(|r| {
        for i in 0..m {
            let a = w[(i + r) % m];
            let b = w[i];
            if a != b {
                return a > b;
            }
        }
        false
    })
}

fn no_cyclic_repeats(w: &[u32]) -> bool {
    let m = w.len();
    (0..m).all(|i| w[i] != w[(i + 1) % m])
}

fn scan(s: u64, d: u64, budget: u64, keep: fn(&[u32]) -> bool) -> Result<Vec<CyclicWord>> {
    word_space(s, d, budget)?;
    let s = s as usize;
    let d32 = d as u32;
    let prefix_len = s.min(2);
    let prefixes = (d as usize).pow(prefix_len as u32);
    let chunks: Vec<Vec<CyclicWord>> = (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let mut word = vec![0u32; s];
            let mut rest = prefix;
            for slot in (0..prefix_len).rev() {
                word[slot] = (rest % d as usize) as u32;
                rest /= d as usize;
            }
            let mut found = Vec::new();
            loop {
                if is_primitive_least(&word) && keep(&word) {
                    found.push(CyclicWord {
                        canonical: Word {
                            letters: word.clone(),
                            alphabet: d32,
                        },
                        period: s,
                    });
                }
                // odometer over the free suffix
                let mut i = s;
                loop {
                    if i == prefix_len {
                        return found;
                    }
                    i -= 1;
                    word[i] += 1;
                    if word[i] < d32 {
                        break;
                    }
                    word[i] = 0;
                }
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Exhaustive list of the orbits counted by [`count_aperiodic`], sorted.
pub fn enumerate_aperiodic(s: u64, d: u64, budget: u64) -> Result<Vec<CyclicWord>> {
    scan(s, d, budget, |_| true)
}

/// Exhaustive list of the orbits counted by [`count_axes`], sorted.
pub fn enumerate_axes(s: u64, d: u64, budget: u64) -> Result<Vec<CyclicWord>> {
    scan(s, d, budget, no_cyclic_repeats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str, d: u32) -> Word {
        Word::parse(text, d).unwrap()
    }

    fn names(list: &[CyclicWord]) -> Vec<String> {
        list.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn period_examples() {
        assert_eq!(period(&w("aaaa", 1)).unwrap(), 1);
        assert_eq!(period(&w("abab", 2)).unwrap(), 2);
        assert_eq!(period(&w("aab", 2)).unwrap(), 3);
        assert!(period(&Word::new(vec![], 2).unwrap()).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&w("ba", 2)).unwrap();
        assert_eq!((c.to_string(), c.period()), ("ab".into(), 2));
        let c = canonicalize(&w("bab", 2)).unwrap();
        assert_eq!((c.to_string(), c.period()), ("abb".into(), 3));
        let c = canonicalize(&w("aa", 2)).unwrap();
        assert_eq!((c.to_string(), c.period()), ("aa".into(), 1));
    }

    #[test]
    fn letters_outside_alphabet_rejected() {
        assert!(Word::parse("ac", 2).is_err());
        assert!(Word::new(vec![0], 0).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_aperiodic(1, 5).unwrap(), BigUint::from(5u32));
        assert_eq!(count_aperiodic(4, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(count_aperiodic(6, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(count_axes(1, 7).unwrap(), BigUint::zero());
        assert_eq!(count_axes(2, 2).unwrap(), BigUint::one());
        assert_eq!(count_axes(3, 3).unwrap(), BigUint::from(2u32));
        assert!(count_aperiodic(0, 2).is_err());
        assert!(count_axes(3, 0).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let b = DEFAULT_WORD_BUDGET;
        assert_eq!(names(&enumerate_aperiodic(2, 2, b).unwrap()), ["ab"]);
        assert_eq!(
            names(&enumerate_aperiodic(1, 3, b).unwrap()),
            ["a", "b", "c"]
        );
        assert_eq!(
            names(&enumerate_aperiodic(3, 2, b).unwrap()),
            ["aab", "abb"]
        );
        assert_eq!(
            names(&enumerate_aperiodic(4, 2, b).unwrap()),
            ["aaab", "aabb", "abbb"]
        );
        assert_eq!(names(&enumerate_axes(2, 2, b).unwrap()), ["ab"]);
        assert!(enumerate_axes(1, 2, b).unwrap().is_empty());
        assert!(enumerate_axes(4, 2, b).unwrap().is_empty());
        assert_eq!(names(&enumerate_axes(3, 3, b).unwrap()), ["abc", "acb"]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_aperiodic(10, 4, 1000),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn counts_match_enumeration_small_grid() {
        for s in 1..=9u64 {
            for d in 1..=3u64 {
                let all = enumerate_aperiodic(s, d, DEFAULT_WORD_BUDGET).unwrap();
                assert_eq!(BigUint::from(all.len()), count_aperiodic(s, d).unwrap());
                let axes = enumerate_axes(s, d, DEFAULT_WORD_BUDGET).unwrap();
                assert_eq!(BigUint::from(axes.len()), count_axes(s, d).unwrap());
                assert!(all.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn orbit_partition_of_all_words() {
        for m in 1..=12u64 {
            for d in 1..=4u64 {
                let total: BigUint = divisors(m)
                    .unwrap()
                    .into_iter()
                    .map(|s| count_aperiodic(s, d).unwrap() * s)
                    .sum();
                assert_eq!(total, BigUint::from(d).pow(m as u32));
            }
        }
    }

    #[test]
    fn booth_matches_naive_minimum() {
        for n in 0..(3u32.pow(6)) {
            let mut letters = Vec::new();
            let mut x = n;
            for _ in 0..6 {
                letters.push(x % 3);
                x /= 3;
            }
            let word = Word::new(letters, 3).unwrap();
            let naive = (0..6).map(|k| word.rotate(k)).min().unwrap();
            assert_eq!(canonicalize(&word).unwrap().canonical(), &naive);
        }
    }

    #[test]
    fn large_alphabet_display() {
        let word = Word::new(vec![0, 30], 31).unwrap();
        assert_eq!(word.to_string(), "0.30");
        assert_eq!(word.report_form(), "x1x31");
    }

    proptest! {
        #[test]
        fn canonical_form_is_rotation_invariant(
            letters in proptest::collection::vec(0u32..4, 1..14),
            k in 0usize..20,
        ) {
            let word = Word::new(letters, 4).unwrap();
            let a = canonicalize(&word).unwrap();
            let b = canonicalize(&word.rotate(k)).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(word.len() % a.period(), 0);
            prop_assert_eq!(a.canonical().rotate(a.period()), a.canonical().clone());
        }
    }
}
