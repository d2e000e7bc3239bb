//! Exact counting helpers: binomials, primality, rational formatting, and
//! lexicographic generation of fixed-size subsets.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::vertex_set::VertexSet;

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    assert!(a >= 0, "binomial with negative top argument {a}");
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` as a `u128`, saturating at `u128::MAX`.
pub fn binomial_u128(a: usize, b: usize) -> u128 {
    binomial(a as i64, b as i64).to_u128().unwrap_or(u128::MAX)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Renders a rational as `"num/den"` in lowest terms, including `"4/1"`.
pub fn ratio_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses the `"num/den"` rendering back into a rational.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let (num, den) = s.split_once('/')?;
    let num: BigInt = num.trim().parse().ok()?;
    let den: BigInt = den.trim().parse().ok()?;
    (!den.is_zero()).then(|| BigRational::new(num, den))
}

/// All `k`-subsets of `pool` in lexicographic order. `pool` must be ascending.
pub struct Combinations<'a> {
    pool: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(pool: &'a [usize], k: usize) -> Self {
        debug_assert!(pool.windows(2).all(|w| w[0] < w[1]));
        Combinations { pool, idx: (0..k).collect(), done: k > pool.len() }
    }
}

impl Iterator for Combinations<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let current = self.idx.iter().map(|&i| self.pool[i]).collect();
        let k = self.idx.len();
        let n = self.pool.len();
        match (0..k).rev().find(|&i| self.idx[i] != i + n - k) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Lexicographic `k`-subsets of `pool` split into independent chunks by their
/// smallest element; concatenating the chunks in order gives the full
/// lexicographic sequence.
pub fn chunked_by_first(pool: &[usize], k: usize) -> Vec<(VertexSet, &[usize], usize)> {
    if k == 0 {
        return vec![(VertexSet::EMPTY, &pool[..0], 0)];
    }
    if k > pool.len() {
        return Vec::new();
    }
    (0..=pool.len() - k).map(|i| (VertexSet::singleton(pool[i]), &pool[i + 1..], k - 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(26, 0), BigUint::one());
        assert_eq!(binomial(7, -1), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(33, 7), BigUint::from(4_272_048u32));
        assert_eq!(binomial(128, 64).to_string(), "23951146041928082866135587776380551750");
    }

    #[test]
    fn pascal_rule() {
        for a in 1..40i64 {
            for b in 0..=a {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
            }
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(4) && !is_prime(1) && is_prime(7919));
    }

    #[test]
    fn ratio_rendering() {
        assert_eq!(ratio_string(&rational(8, 2)), "4/1");
        assert_eq!(ratio_string(&rational(374, 62)), "187/31");
        assert_eq!(parse_ratio("187/31"), Some(rational(187, 31)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let pool: Vec<usize> = (1..=7).collect();
        for k in 0..=8 {
            let all: Vec<VertexSet> = Combinations::new(&pool, k).collect();
            assert_eq!(all.len() as u128, binomial_u128(7, k));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|s| s.len() == k));
            let chunked: Vec<VertexSet> = chunked_by_first(&pool, k)
                .into_iter()
                .flat_map(|(head, rest, kk)| Combinations::new(rest, kk).map(move |t| t.union(head)))
                .collect();
            assert_eq!(chunked, all);
        }
    }
}
