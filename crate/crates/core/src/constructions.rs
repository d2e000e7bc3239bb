//! Explicit maximal intersecting families and the parameter helpers they need.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::family::{Family, MAX_MEMBERS};
use crate::numeric::{binomial_u128, is_prime, rational, Combinations};
use crate::projective::ProjectivePlane;
use crate::vertex_set::{VertexSet, MAX_VERTEX};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

fn ensure_member_count(count: u128) -> Result<()> {
    if count > MAX_MEMBERS as u128 {
        return Err(Error::TooManyMembers(count));
    }
    Ok(())
}

/// Every `base ∪ X` with `X` an `extra`-subset of `[1, n] ∖ base`.
fn extensions(n: usize, base: VertexSet, extra: usize) -> impl Iterator<Item = VertexSet> {
    let pool: Vec<usize> = VertexSet::universe(n).difference(base).to_vec();
    let sets: Vec<VertexSet> = Combinations::new(&pool, extra).map(|x| x.union(base)).collect();
    sets.into_iter()
}

/// All r-sets through vertex 1.
pub fn star_family(n: usize, r: usize) -> Result<Family> {
    if r == 0 || 2 * r > n || n > MAX_VERTEX {
        return Err(bad(format!("star needs 1 <= r, 2r <= n <= 128; got n = {n}, r = {r}")));
    }
    ensure_member_count(binomial_u128(n - 1, r - 1))?;
    Family::from_sets(n, r, extensions(n, VertexSet::singleton(1), r - 1))
}

/// The four-part family with `S = [2, 2r-2]` and `S0 = [2, r-1]`:
///
/// * `{1} ∪ G` for every (r-1)-subset `G` of `S`;
/// * `{1, i} ∪ H` for `2r-1 <= i <= n` and every (r-2)-subset `H ≠ S0` of `S`;
/// * every r-subset of `S`;
/// * `(S ∖ S0) ∪ {i}` for `2r-1 <= i <= n`.
pub fn thm1ii_family(n: usize, r: usize) -> Result<Family> {
    if r < 3 || 2 * r + 2 >= n || n > MAX_VERTEX {
        return Err(bad(format!("need r >= 3 and 2r + 2 < n <= 128; got n = {n}, r = {r}")));
    }
    let parts = thm1ii_parts(n, r);
    Family::from_sets(n, r, parts.into_iter().flatten())
}

/// The four parts of [`thm1ii_family`] before merging.
pub(crate) fn thm1ii_parts(n: usize, r: usize) -> [Vec<VertexSet>; 4] {
    let s_pool: Vec<usize> = (2..=2 * r - 2).collect();
    let s0 = VertexSet::interval(2, r - 1);
    let s_rest = VertexSet::interval(r, 2 * r - 2);
    let one = VertexSet::singleton(1);
    let tail = 2 * r - 1..=n;
    let first = Combinations::new(&s_pool, r - 1).map(|g| g.union(one)).collect();
    let second = tail
        .clone()
        .flat_map(|i| {
            Combinations::new(&s_pool, r - 2).filter(move |&h| h != s0).map(move |h| h.union(one).with(i))
        })
        .collect();
    let third = Combinations::new(&s_pool, r).collect();
    let fourth = tail.map(|i| s_rest.with(i)).collect();
    [first, second, third, fourth]
}

/// Checks the parameter window shared by [`plane_family`] and the matching
/// degree formula. Returns the plane size `p² + p + 1`.
pub(crate) fn check_plane_window(n: usize, r: usize, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as usize;
    let size = p * p + p + 1;
    if n > MAX_VERTEX {
        return Err(Error::UniverseTooLarge(n));
    }
    if size > n {
        return Err(bad(format!("plane of order {p} needs n >= {size}, got {n}")));
    }
    if r < p + 1 {
        return Err(bad(format!("r = {r} is smaller than a line ({} points)", p + 1)));
    }
    // Small enough that a line-free r-set cannot block, and far from two lines.
    if 2 * r >= 3 * (p + 1) {
        return Err(bad(format!("r = {r} must be below 3(p + 1)/2 = {}", 3.0 * (p as f64 + 1.0) / 2.0)));
    }
    // Room to extend a line avoiding an r-set to a disjoint r-set.
    if n < 2 * r {
        return Err(bad(format!("need n >= 2r, got n = {n}, r = {r}")));
    }
    Ok(size)
}

/// All r-subsets of `[n]` containing a line of PG(2, p) on `[1, p² + p + 1]`.
pub fn plane_family(n: usize, r: usize, p: u64) -> Result<Family> {
    check_plane_window(n, r, p)?;
    let plane = ProjectivePlane::new(p, 1)?;
    let extra = r - p as usize - 1;
    ensure_member_count(plane.lines().len() as u128 * binomial_u128(n - p as usize - 1, extra))?;
    let mut sets: Vec<VertexSet> = plane.lines().iter().flat_map(|&l| extensions(n, l, extra)).collect();
    sets.sort_unstable();
    sets.dedup();
    let family = Family::from_sets(n, r, sets)?;
    if let Some(&v) = family.uncovered().first() {
        return Err(Error::UncoveredUniverse(v));
    }
    Ok(family)
}

/// Parameters `(k, p, s)` of the union-of-planes family: `k` odd, `p` prime,
/// `0 <= 2s <= p`, on `n = k(p² + p + 1)` vertices with `r = (k+1)/2 (p+1) + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiPlaneParams {
    k: usize,
    p: u64,
    s: usize,
}

impl MultiPlaneParams {
    pub fn new(k: usize, p: u64, s: usize) -> Result<MultiPlaneParams> {
        let params = MultiPlaneParams::unchecked_universe(k, p, s)?;
        if params.n() > MAX_VERTEX {
            return Err(Error::UniverseTooLarge(params.n()));
        }
        Ok(params)
    }

    fn unchecked_universe(k: usize, p: u64, s: usize) -> Result<MultiPlaneParams> {
        if k.is_multiple_of(2) {
            return Err(bad(format!("k = {k} must be odd and positive")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if 2 * s as u64 > p {
            return Err(bad(format!("s = {s} exceeds p/2 = {}", p as f64 / 2.0)));
        }
        Ok(MultiPlaneParams { k, p, s })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn plane_size(&self) -> usize {
        let p = self.p as usize;
        p * p + p + 1
    }

    /// Number of planes whose lines each member must contain.
    pub fn quorum(&self) -> usize {
        self.k.div_ceil(2)
    }

    pub fn n(&self) -> usize {
        self.k * self.plane_size()
    }

    pub fn r(&self) -> usize {
        self.quorum() * (self.p as usize + 1) + self.s
    }
}

/// Every r-subset of `[n]` that, for some majority `I` of the `k` disjoint
/// planes, contains a line of each plane in `I`.
pub fn multi_plane_family(params: MultiPlaneParams) -> Result<Family> {
    let (n, r, k) = (params.n(), params.r(), params.k());
    let quorum = params.quorum();
    let planes: Vec<ProjectivePlane> =
        (0..k).map(|i| ProjectivePlane::new(params.p(), i * params.plane_size() + 1)).collect::<Result<_>>()?;
    let line_count = params.plane_size() as u128;
    let generated = binomial_u128(k, quorum)
        .saturating_mul(line_count.saturating_pow(quorum as u32))
        .saturating_mul(binomial_u128(n - (r - params.s()), params.s()));
    ensure_member_count(generated)?;

    let plane_ids: Vec<usize> = (1..=k).collect();
    let mut sets = Vec::new();
    for majority in Combinations::new(&plane_ids, quorum) {
        let chosen: Vec<&ProjectivePlane> = majority.iter().map(|i| &planes[i - 1]).collect();
        let mut cores = vec![VertexSet::EMPTY];
        for plane in chosen {
            cores = cores.iter().flat_map(|&c| plane.lines().iter().map(move |&l| c.union(l))).collect();
        }
        for core in cores {
            sets.extend(extensions(n, core, params.s()));
        }
    }
    sets.sort_unstable();
    sets.dedup();
    Family::from_sets(n, r, sets)
}

/// On `[2r]`: every r-set avoiding vertex 1 except `[r+1, 2r]`, plus `[r]`.
pub fn halving_family(r: usize) -> Result<Family> {
    if r < 3 || 2 * r > MAX_VERTEX {
        return Err(bad(format!("need 3 <= r <= 64, got r = {r}")));
    }
    let n = 2 * r;
    ensure_member_count(binomial_u128(n - 1, r))?;
    let pool: Vec<usize> = (2..=n).collect();
    let upper = VertexSet::interval(r + 1, n);
    let sets = Combinations::new(&pool, r).filter(|&s| s != upper).chain([VertexSet::interval(1, r)]);
    Family::from_sets(n, r, sets)
}

/// Smallest prime `p` with `2r/3 < p < 4r/5`.
pub fn prime_pick(r: u64) -> Result<u64> {
    if r < 2 {
        return Err(bad(format!("need r >= 2, got {r}")));
    }
    (2 * r / 3 + 1..).take_while(|&p| 5 * p < 4 * r).find(|&p| is_prime(p)).ok_or(Error::NoPrimeInWindow(r))
}

/// Result of [`match_regular_params`]: the chosen `(k, p, s)`, the universe
/// and rank they produce, and the achieved relative deviation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularMatch {
    pub k: usize,
    pub p: u64,
    pub s: usize,
    pub n_prime: usize,
    pub r_prime: usize,
    /// `max(|n' - n| / n, |r' - r| / r)`.
    pub deviation: BigRational,
}

impl RegularMatch {
    /// Validated parameters; fails when `n'` exceeds the universe cap.
    pub fn params(&self) -> Result<MultiPlaneParams> {
        MultiPlaneParams::new(self.k, self.p, self.s)
    }
}

fn relative_gap(actual: usize, target: usize) -> BigRational {
    rational(actual.abs_diff(target) as u64, target as u64)
}

/// Searches odd `k`, prime `p` and `0 <= s <= p/2` for the union-of-planes
/// instance closest to `(n, r)` in relative minimax deviation. With `cap`,
/// only instances with `k(p² + p + 1) <= cap` are considered; without, the
/// search is bounded only by the deviation of the smallest instance.
/// Ties go to smaller `p`, then `k`, then `s`.
pub fn match_regular_params(n: usize, r: usize, cap: Option<usize>) -> Result<RegularMatch> {
    if r < 2 || n < 7 {
        return Err(bad(format!("need r >= 2 and n >= 7, got n = {n}, r = {r}")));
    }
    let limit = match cap {
        Some(c) => c,
        None => {
            // Anything with n' above n(1 + d0) is worse than (1, 2, 0).
            let baseline = relative_gap(7, n).max(relative_gap(3, r));
            (rational(n as u64, 1u64) * (rational(1u64, 1u64) + baseline)).floor().to_integer().to_usize().unwrap()
        }
    };
    let mut best: Option<RegularMatch> = None;
    for p in (2u64..).take_while(|&p| (p * p + p + 1) as usize <= limit).filter(|&p| is_prime(p)) {
        let size = (p * p + p + 1) as usize;
        for k in (1..=limit / size).step_by(2) {
            for s in 0..=(p / 2) as usize {
                let candidate = MultiPlaneParams::unchecked_universe(k, p, s)?;
                let (n_prime, r_prime) = (candidate.n(), candidate.r());
                let deviation = relative_gap(n_prime, n).max(relative_gap(r_prime, r));
                if best.as_ref().is_none_or(|b| deviation < b.deviation) {
                    best = Some(RegularMatch { k, p, s, n_prime, r_prime, deviation });
                }
            }
        }
    }
    best.ok_or(Error::NoFeasibleParams(limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::degree_profile;
    use crate::numeric::binomial;
    use num_traits::ToPrimitive;

    fn ratio_of(f: &Family) -> BigRational {
        degree_profile(f).ratio.unwrap()
    }

    #[test]
    fn star_examples() {
        let f = star_family(7, 3).unwrap();
        let d = degree_profile(&f);
        assert_eq!((f.len(), d.delta_max, d.delta_min), (15, 15, 5));
        assert_eq!(ratio_of(&f), rational(3, 1));
        assert!(f.is_maximal_intersecting().unwrap());
        let f = star_family(5, 2).unwrap();
        assert_eq!((f.len(), ratio_of(&f)), (4, rational(4, 1)));
        // At n = 2r every r-set avoiding the center has its complement in the star.
        let f = star_family(4, 2).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_maximal_intersecting().unwrap());
        assert!(matches!(star_family(5, 3), Err(Error::BadParameters(_))));
    }

    #[test]
    fn thm1ii_part_sizes() {
        for r in 3..=5 {
            for n in 2 * r + 3..=16 {
                let [a, b, c, d] = thm1ii_parts(n, r);
                let (t, tail) = ((2 * r - 3) as i64, (n - 2 * r + 2) as u128);
                assert_eq!(a.len() as u128, binomial(t, r as i64 - 1).to_u128().unwrap());
                assert_eq!(b.len() as u128, tail * (binomial(t, r as i64 - 2).to_u128().unwrap() - 1));
                assert_eq!(c.len() as u128, binomial(t, r as i64).to_u128().unwrap());
                assert_eq!(d.len() as u128, tail);
                let total = a.len() + b.len() + c.len() + d.len();
                assert_eq!(thm1ii_family(n, r).unwrap().len(), total, "parts overlap at ({n}, {r})");
            }
        }
    }

    #[test]
    fn thm1ii_small_instance() {
        let f = thm1ii_family(10, 3).unwrap();
        assert_eq!(f.len(), 22);
        let d = degree_profile(&f);
        assert_eq!(d.degree(1), 15);
        assert!((5..=10).all(|v| d.degree(v) == 3));
        assert_eq!(ratio_of(&f), rational(5, 1));
        assert!(f.is_maximal_intersecting().unwrap());
        assert!(f.covers_universe());
        let g = thm1ii_family(12, 4).unwrap();
        let d = degree_profile(&g);
        assert_eq!((d.degree(1), d.degree(12)), (64, 10));
        assert!(matches!(thm1ii_family(8, 3), Err(Error::BadParameters(_))));
        assert!(matches!(thm1ii_family(10, 2), Err(Error::BadParameters(_))));
    }

    #[test]
    fn plane_family_examples() {
        let f = plane_family(13, 4, 3).unwrap();
        assert_eq!(f.len(), 13);
        assert!(degree_profile(&f).degrees.iter().all(|&d| d == 4));
        let f = plane_family(13, 5, 3).unwrap();
        assert_eq!(f.len(), 117);
        assert!(degree_profile(&f).degrees.iter().all(|&d| d == 45));
        let f = plane_family(33, 7, 5).unwrap();
        assert_eq!(f.len(), 837);
        let d = degree_profile(&f);
        assert_eq!((d.degree(1), d.degree(33)), (187, 31));
        assert_eq!(ratio_of(&f), rational(187, 31));
    }

    #[test]
    fn plane_family_window() {
        assert!(matches!(plane_family(13, 4, 4), Err(Error::NotPrime(4))));
        assert!(matches!(plane_family(12, 4, 3), Err(Error::BadParameters(_))));
        assert!(matches!(plane_family(13, 3, 3), Err(Error::BadParameters(_))));
        assert!(matches!(plane_family(13, 6, 3), Err(Error::BadParameters(_))));
        // Lines alone on more than p² + p + 1 vertices leave the rest uncovered.
        assert!(matches!(plane_family(14, 4, 3), Err(Error::UncoveredUniverse(14))));
        // Four points in the Fano plane: no room to extend a disjoint line.
        assert!(matches!(plane_family(7, 4, 2), Err(Error::BadParameters(_))));
        let f = plane_family(7, 3, 2).unwrap();
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn multi_plane_examples() {
        let fano = multi_plane_family(MultiPlaneParams::new(1, 2, 0).unwrap()).unwrap();
        assert_eq!((fano.n(), fano.r(), fano.len()), (7, 3, 7));
        let f = multi_plane_family(MultiPlaneParams::new(3, 2, 0).unwrap()).unwrap();
        assert_eq!((f.n(), f.r(), f.len()), (21, 6, 147));
        assert!(degree_profile(&f).degrees.iter().all(|&d| d == 42));
        let g = multi_plane_family(MultiPlaneParams::new(1, 3, 1).unwrap()).unwrap();
        assert_eq!(g, plane_family(13, 5, 3).unwrap());
    }

    #[test]
    fn multi_plane_params_validation() {
        assert!(matches!(MultiPlaneParams::new(2, 2, 0), Err(Error::BadParameters(_))));
        assert!(matches!(MultiPlaneParams::new(1, 4, 0), Err(Error::NotPrime(4))));
        assert!(matches!(MultiPlaneParams::new(1, 3, 2), Err(Error::BadParameters(_))));
        assert!(matches!(MultiPlaneParams::new(19, 2, 0), Err(Error::UniverseTooLarge(133))));
        let p = MultiPlaneParams::new(3, 2, 1).unwrap();
        assert_eq!((p.n(), p.r()), (21, 7));
    }

    #[test]
    fn halving_examples() {
        let f = halving_family(3).unwrap();
        assert_eq!(f.len(), 10);
        let d = degree_profile(&f);
        assert_eq!(d.degrees, vec![1, 7, 7, 5, 5, 5]);
        assert_eq!(ratio_of(&f), rational(7, 1));
        let pool: Vec<usize> = (1..=6).collect();
        for a in Combinations::new(&pool, 3) {
            let complement = VertexSet::universe(6).difference(a);
            assert!(f.contains(a) ^ f.contains(complement));
        }
        let g = halving_family(4).unwrap();
        assert_eq!(g.len(), 35);
        assert_eq!(degree_profile(&g).degree(1), 1);
        assert!(matches!(halving_family(2), Err(Error::BadParameters(_))));
    }

    #[test]
    fn prime_pick_examples() {
        assert_eq!(prime_pick(7).unwrap(), 5);
        assert_eq!(prime_pick(100).unwrap(), 67);
        assert_eq!(prime_pick(4).unwrap(), 3);
        for r in [2, 3, 5, 6] {
            assert!(matches!(prime_pick(r), Err(Error::NoPrimeInWindow(_))), "r = {r}");
        }
        for r in 38..=500 {
            let p = prime_pick(r).unwrap();
            assert!(is_prime(p) && 3 * p > 2 * r && 5 * p < 4 * r);
        }
    }

    #[test]
    fn match_exact_hits() {
        let m = match_regular_params(7, 3, Some(128)).unwrap();
        assert_eq!((m.k, m.p, m.s, m.n_prime, m.r_prime), (1, 2, 0, 7, 3));
        let m = match_regular_params(13, 4, Some(128)).unwrap();
        assert_eq!((m.k, m.p, m.s), (1, 3, 0));
        let m = match_regular_params(21, 6, Some(128)).unwrap();
        assert_eq!((m.k, m.p, m.s, m.deviation.clone()), (3, 2, 0, rational(0, 1)));
        assert!(m.params().is_ok());
        assert!(matches!(match_regular_params(100, 10, Some(6)), Err(Error::NoFeasibleParams(6))));
    }

    #[test]
    fn uncapped_match_can_leave_the_desk() {
        // k = 1, p = 11 gives exactly n' = 133, r' = 12.
        let m = match_regular_params(133, 12, None).unwrap();
        assert_eq!((m.k, m.p, m.s, m.n_prime, m.r_prime), (1, 11, 0, 133, 12));
        assert!(matches!(m.params(), Err(Error::UniverseTooLarge(133))));
    }

    /// Brute-force minimax over an explicit grid, independent of the search loop bounds.
    #[test]
    fn capped_match_agrees_with_grid_scan() {
        for (n, r) in [(30, 7), (50, 9), (100, 20), (64, 5), (9, 2)] {
            let found = match_regular_params(n, r, Some(128)).unwrap();
            let mut best: Option<(BigRational, u64, usize, usize)> = None;
            for p in [2u64, 3, 5, 7] {
                for k in (1..20).step_by(2) {
                    let size = (p * p + p + 1) as usize;
                    if k * size > 128 {
                        continue;
                    }
                    for s in 0..=(p / 2) as usize {
                        let r2 = k.div_ceil(2) * (p as usize + 1) + s;
                        let d = relative_gap(k * size, n).max(relative_gap(r2, r));
                        let key = (d, p, k, s);
                        if best.as_ref().is_none_or(|b| key < *b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let (d, p, k, s) = best.unwrap();
            assert_eq!((found.deviation, found.p, found.k, found.s), (d, p, k, s), "({n}, {r})");
        }
    }
}
