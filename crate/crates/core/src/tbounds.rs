//! Window functions locating `2r` (and `2r+1`) between consecutive terms of
//! the sequence `m', m'p, m'p^2, ...`.

use crate::error::Result;
use crate::numtheory::ensure_prime;

/// Both window values for one `(p, r, m')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TWindow {
    pub p: u64,
    pub r: i64,
    pub m_prime: u64,
    pub t_ev: u32,
    pub t_od: u32,
}

impl TWindow {
    pub fn new(p: u64, r: i64, m_prime: u64) -> Result<Self> {
        ensure_prime(p)?;
        if m_prime == 0 {
            return Err(crate::Error::NonPositive("m'"));
        }
        Ok(TWindow {
            p,
            r,
            m_prime,
            t_ev: t_ev(p, r, m_prime),
            t_od: t_od(p, r, m_prime),
        })
    }
}

/// The unique `t >= 1` with `m p^(t-1) <= target < m p^t`, or 0.
fn window(p: u64, target: i64, m: u64) -> u32 {
    if m == 0 || target < m as i64 {
        return 0;
    }
    let target = target as u128;
    let (p, mut lo) = (p as u128, m as u128);
    let mut t = 1;
    // lo = m p^(t-1) <= target; advance until target < m p^t
    while lo * p <= target {
        lo *= p;
        t += 1;
    }
    debug_assert!(lo <= target && target < lo * p);
    t
}

/// `t_ev(p, r, m')`: the window of `2r`. Zero for `r <= 0` or `m' > 2r`.
pub fn t_ev(p: u64, r: i64, m_prime: u64) -> u32 {
    window(p, r.saturating_mul(2), m_prime)
}

/// `t_od(p, r, m')`: the window of `2r + 1`.
pub fn t_od(p: u64, r: i64, m_prime: u64) -> u32 {
    window(p, r.saturating_mul(2).saturating_add(1), m_prime)
}

/// Every `m'` beyond this bound has both windows empty in the given degree.
pub fn m_prime_bound(_p: u64, degree: i64) -> u64 {
    degree.max(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn satisfies(p: u64, target: i64, m: u64, t: u32) -> bool {
        let lo = m as i128 * (p as i128).pow(t - 1);
        lo <= target as i128 && (target as i128) < lo * p as i128
    }

    #[test]
    fn examples() {
        assert_eq!(t_ev(3, 1, 2), 1);
        assert_eq!(t_ev(3, 1, 4), 0);
        assert_eq!(t_ev(3, 4, 2), 2);
        assert_eq!(t_od(3, 0, 1), 1);
        assert_eq!(t_od(3, 1, 1), 2);
        assert_eq!(t_od(3, 1, 5), 0);
        assert_eq!(t_od(3, 2, 5), 1);
        assert_eq!(m_prime_bound(3, 4), 4);
        assert_eq!(m_prime_bound(7, 0), 0);
        assert_eq!(m_prime_bound(2, 3), 3);
        assert_eq!(m_prime_bound(2, -5), 0);
    }

    #[test]
    fn window_struct() {
        let w = TWindow::new(3, 1, 1).unwrap();
        assert_eq!((w.t_ev, w.t_od), (1, 2));
        assert!(TWindow::new(4, 1, 1).is_err());
        assert!(TWindow::new(3, 1, 0).is_err());
    }

    #[test]
    fn non_positive_r_is_empty() {
        for p in [2, 3, 5] {
            for r in -5..=0 {
                for m in 1..20 {
                    assert_eq!(t_ev(p, r, m), 0);
                    if r < 0 {
                        assert_eq!(t_od(p, r, m), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn unique_solution() {
        for p in [2, 3, 5, 7] {
            for r in 0..60i64 {
                for m in 1..=130u64 {
                    for (target, t) in [(2 * r, t_ev(p, r, m)), (2 * r + 1, t_od(p, r, m))] {
                        let hits: Vec<u32> =
                            (1..40).filter(|&u| satisfies(p, target, m, u)).collect();
                        if t == 0 {
                            assert!(hits.is_empty());
                        } else {
                            assert_eq!(hits, vec![t]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bound_is_sufficient() {
        for p in [2, 3, 5] {
            for degree in 0..40i64 {
                let n = m_prime_bound(p, degree);
                let r = degree.div_euclid(2);
                for m in n + 1..3 * n + 5 {
                    assert_eq!(t_ev(p, r, m), 0);
                    if degree % 2 == 1 {
                        assert_eq!(t_od(p, r, m), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_sum_identity() {
        for p in [3u64, 5, 7] {
            for r in 0..=50i64 {
                let total: u64 = (1..=(2 * r + 1) as u64)
                    .filter(|m| m % 2 == 1 && m % p != 0)
                    .map(|m| t_od(p, r, m) as u64)
                    .sum();
                assert_eq!(total, r as u64 + 1, "p={p} r={r}");
            }
        }
    }

    #[test]
    fn monotone() {
        for p in [2, 3, 5] {
            for r in 0..40i64 {
                for m in 1..90u64 {
                    assert!(t_ev(p, r, m + 1) <= t_ev(p, r, m));
                    assert!(t_ev(p, r + 1, m) >= t_ev(p, r, m));
                }
            }
        }
    }
}
