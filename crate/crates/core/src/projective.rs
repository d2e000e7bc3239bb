//! The Desarguesian plane PG(2, p) for prime p, embedded into an interval of
//! vertex labels, and an exhaustive check that small blocking sets contain a
//! line.
//!
//! Points and lines are both indexed by normalized homogeneous triples over
//! GF(p) in the order `(1, y, z)` for `y, z` ascending (z fastest), then
//! `(0, 1, z)`, then `(0, 0, 1)`. Point `i` (0-based) gets label
//! `offset + i`. Point `x` lies on line `a` iff `a · x = 0 (mod p)`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::MAX_SCAN;
use crate::numeric::{binomial_u128, chunked_by_first, is_prime, Combinations};
use crate::vertex_set::{VertexSet, MAX_VERTEX};

#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    order: u64,
    offset: usize,
    points: Vec<usize>,
    lines: Vec<VertexSet>,
    lines_through: Vec<Vec<usize>>,
}

fn normalized_triples(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    for y in 0..p {
        for z in 0..p {
            out.push([1, y, z]);
        }
    }
    for z in 0..p {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

impl ProjectivePlane {
    /// Builds PG(2, p) on labels `offset ..= offset + p² + p` and checks the
    /// plane axioms.
    pub fn new(p: u64, offset: usize) -> Result<ProjectivePlane> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if offset == 0 {
            return Err(Error::BadParameters("plane offset must be at least 1".into()));
        }
        let size = (p * p + p + 1) as usize;
        let last = offset + size - 1;
        if last > MAX_VERTEX {
            return Err(Error::UniverseTooLarge(last));
        }
        let triples = normalized_triples(p);
        let points: Vec<usize> = (0..size).map(|i| offset + i).collect();
        let on = |a: &[u64; 3], x: &[u64; 3]| (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]).is_multiple_of(p);
        let lines: Vec<VertexSet> = triples
            .iter()
            .map(|a| triples.iter().zip(&points).filter(|(x, _)| on(a, x)).map(|(_, &label)| label).collect())
            .collect();
        let lines_through = points
            .iter()
            .map(|&x| lines.iter().enumerate().filter(|(_, l)| l.contains(x)).map(|(i, _)| i).collect())
            .collect();
        let plane = ProjectivePlane { order: p, offset, points, lines, lines_through };
        plane.check_axioms();
        Ok(plane)
    }

    fn check_axioms(&self) {
        let k = self.order as usize + 1;
        assert!(self.lines.iter().all(|l| l.len() == k), "line size");
        assert!(self.lines_through.iter().all(|ls| ls.len() == k), "point degree");
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                assert_eq!(a.intersection(*b).len(), 1, "two lines must meet once");
            }
        }
        for (i, &x) in self.points.iter().enumerate() {
            for &y in &self.points[i + 1..] {
                let pair = VertexSet::singleton(x).with(y);
                assert_eq!(self.lines.iter().filter(|l| pair.is_subset(**l)).count(), 1, "two points span one line");
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Point labels in ascending order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn point_set(&self) -> VertexSet {
        VertexSet::interval(self.offset, self.offset + self.points.len() - 1)
    }

    pub fn lines(&self) -> &[VertexSet] {
        &self.lines
    }

    /// Indices into [`lines`](Self::lines) of the lines through `point`.
    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.lines_through[point - self.offset]
    }

    pub fn is_blocking_set(&self, set: VertexSet) -> bool {
        self.lines.iter().all(|l| l.intersects(set))
    }

    pub fn contains_line(&self, set: VertexSet) -> bool {
        self.lines.iter().any(|l| l.is_subset(set))
    }

    /// Exhaustively lists every point set smaller than `3(p + 1)/2` that
    /// blocks all lines without containing one.
    pub fn verify_blokhuis(&self) -> Result<BlokhuisReport> {
        let p = self.order as usize;
        // Largest integer strictly below 3(p + 1)/2.
        let bound = (3 * (p + 1)).div_ceil(2) - 1;
        let top = binomial_u128(self.points.len(), bound);
        if top > MAX_SCAN {
            return Err(Error::TooLargeToVerify(format!("C({}, {bound}) = {top} subsets", self.points.len())));
        }
        let mut checked = 0u64;
        let mut blocking_sets = 0u64;
        let mut violations = Vec::new();
        for size in 0..=bound {
            let parts: Vec<(u64, u64, Vec<VertexSet>)> = chunked_by_first(&self.points, size)
                .into_par_iter()
                .map(|(head, rest, k)| {
                    let (mut seen, mut blocking, mut bad) = (0u64, 0u64, Vec::new());
                    for set in Combinations::new(rest, k).map(|t| t.union(head)) {
                        seen += 1;
                        if self.is_blocking_set(set) {
                            blocking += 1;
                            if !self.contains_line(set) {
                                bad.push(set);
                            }
                        }
                    }
                    (seen, blocking, bad)
                })
                .collect();
            for (seen, blocking, bad) in parts {
                checked += seen;
                blocking_sets += blocking;
                violations.extend(bad);
            }
        }
        violations.sort();
        Ok(BlokhuisReport { p: self.order, bound, checked: BigUint::from(checked), blocking_sets, violations })
    }
}

pub fn build_plane(p: u64, offset: usize) -> Result<ProjectivePlane> {
    ProjectivePlane::new(p, offset)
}

/// Outcome of [`ProjectivePlane::verify_blokhuis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlokhuisReport {
    pub p: u64,
    /// Largest set size examined.
    pub bound: usize,
    /// Number of point sets examined, all sizes `0..=bound`.
    pub checked: BigUint,
    pub blocking_sets: u64,
    /// Blocking sets containing no line, in canonical order.
    pub violations: Vec<VertexSet>,
}

#[derive(Serialize)]
struct BlokhuisJson {
    p: u64,
    bound: usize,
    checked: u64,
    blocking_sets: u64,
    violations: Vec<Vec<usize>>,
}

impl BlokhuisReport {
    /// `{"p":2,"bound":4,"checked":99,"blocking_sets":35,"violations":[]}`
    pub fn to_json(&self) -> String {
        let wire = BlokhuisJson {
            p: self.p,
            bound: self.bound,
            checked: self.checked.to_u64().expect("subset count fits in u64"),
            blocking_sets: self.blocking_sets,
            violations: self.violations.iter().map(|v| v.to_vec()).collect(),
        };
        serde_json::to_string(&wire).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> VertexSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn fano_plane() {
        let plane = build_plane(2, 1).unwrap();
        assert_eq!(plane.points().len(), 7);
        assert_eq!(plane.lines().len(), 7);
        assert!(plane.lines().iter().all(|l| l.len() == 3));
        // (1,0,0)=1 (1,0,1)=2 (1,1,0)=3 (1,1,1)=4 (0,1,0)=5 (0,1,1)=6 (0,0,1)=7
        assert_eq!(plane.lines()[0], set(&[5, 6, 7]));
        assert_eq!(plane.lines_through(1).len(), 3);
    }

    #[test]
    fn order_three_and_offsets() {
        let plane = build_plane(3, 1).unwrap();
        assert_eq!(plane.points().len(), 13);
        assert!(plane.lines().iter().all(|l| l.len() == 4));
        assert!(plane.points().iter().all(|&x| plane.lines_through(x).len() == 4));
        let shifted = build_plane(3, 101).unwrap();
        assert_eq!(shifted.point_set(), VertexSet::interval(101, 113));
        let total: usize = shifted.lines().iter().map(|l| l.len()).sum();
        assert_eq!(total, 13 * 4);
    }

    #[test]
    fn order_seven_fits() {
        let plane = build_plane(7, 1).unwrap();
        assert_eq!(plane.points().len(), 57);
        assert!(matches!(build_plane(11, 1), Err(Error::UniverseTooLarge(133))));
        assert!(matches!(build_plane(7, 80), Err(Error::UniverseTooLarge(136))));
    }

    #[test]
    fn rejects_non_primes() {
        assert!(matches!(build_plane(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(build_plane(1, 1), Err(Error::NotPrime(1))));
        assert!(matches!(build_plane(2, 0), Err(Error::BadParameters(_))));
    }

    #[test]
    fn blocking_sets_in_fano() {
        let plane = build_plane(2, 1).unwrap();
        for &line in plane.lines() {
            assert!(plane.is_blocking_set(line));
            assert!(!plane.is_blocking_set(plane.point_set().difference(line)));
        }
        let pool: Vec<usize> = plane.points().to_vec();
        assert!(Combinations::new(&pool, 2).all(|b| !plane.is_blocking_set(b)));
    }

    #[test]
    fn every_blocking_set_has_at_least_p_plus_one_points() {
        for p in [2u64, 3] {
            let plane = build_plane(p, 1).unwrap();
            let pool = plane.points().to_vec();
            assert!(Combinations::new(&pool, p as usize).all(|b| !plane.is_blocking_set(b)));
        }
    }

    #[test]
    fn blokhuis_small_orders() {
        let r2 = build_plane(2, 1).unwrap().verify_blokhuis().unwrap();
        assert_eq!((r2.bound, r2.blocking_sets), (4, 35));
        assert_eq!(r2.checked, BigUint::from(1u32 + 7 + 21 + 35 + 35));
        assert!(r2.violations.is_empty());
        assert_eq!(r2.to_json(), r#"{"p":2,"bound":4,"checked":99,"blocking_sets":35,"violations":[]}"#);
        let r3 = build_plane(3, 1).unwrap().verify_blokhuis().unwrap();
        assert_eq!(r3.bound, 5);
        assert!(r3.violations.is_empty());
    }

    #[test]
    fn blokhuis_refuses_large_orders() {
        assert!(matches!(build_plane(7, 1).unwrap().verify_blokhuis(), Err(Error::TooLargeToVerify(_))));
    }
}
