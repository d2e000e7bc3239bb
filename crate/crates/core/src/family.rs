//! Uniform families of r-sets over `[1, n]` and their verifiers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binomial_u128, chunked_by_first, Combinations};
use crate::vertex_set::{VertexSet, MAX_VERTEX};

/// Explicit families larger than this are refused.
pub const MAX_MEMBERS: usize = 1 << 24;

/// Maximality scans over more than this many candidate r-sets are refused.
pub const MAX_SCAN: u128 = 1 << 26;

/// A family of distinct r-subsets of `[1, n]`, kept in canonical
/// (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct Family {
    n: usize,
    r: usize,
    sets: Vec<VertexSet>,
}

/// Wire form: `{"n": int, "r": int, "sets": [[int, ...], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub r: usize,
    pub sets: Vec<Vec<usize>>,
}

impl TryFrom<FamilyJson> for Family {
    type Error = Error;

    fn try_from(json: FamilyJson) -> Result<Family> {
        Family::new(json.n, json.r, json.sets)
    }
}

impl From<Family> for FamilyJson {
    fn from(family: Family) -> FamilyJson {
        FamilyJson { n: family.n, r: family.r, sets: family.sets.iter().map(|s| s.to_vec()).collect() }
    }
}

fn check_dimensions(n: usize, r: usize) -> Result<()> {
    if n > MAX_VERTEX {
        return Err(Error::UniverseTooLarge(n));
    }
    if r == 0 || r > n {
        return Err(Error::BadParameters(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    Ok(())
}

impl Family {
    /// Builds a family from element lists, validating ranks and ranges and
    /// rejecting repeated sets.
    pub fn new(n: usize, r: usize, sets: Vec<Vec<usize>>) -> Result<Family> {
        check_dimensions(n, r)?;
        let mut members = Vec::with_capacity(sets.len());
        for elements in sets {
            if let Some(&element) = elements.iter().find(|&&e| e == 0 || e > n) {
                return Err(Error::ElementOutOfRange { element, n });
            }
            let set: VertexSet = elements.iter().copied().collect();
            if elements.len() != r || set.len() != r {
                return Err(Error::RankMismatch { set: elements, r });
            }
            members.push(set);
        }
        Family::from_sets(n, r, members)
    }

    /// Same as [`Family::new`] for sets already in bit form.
    pub fn from_sets(n: usize, r: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Family> {
        check_dimensions(n, r)?;
        let universe = VertexSet::universe(n);
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        if sets.len() > MAX_MEMBERS {
            return Err(Error::TooManyMembers(sets.len() as u128));
        }
        for &s in &sets {
            if !s.is_subset(universe) {
                let element = s.difference(universe).min_element().unwrap();
                return Err(Error::ElementOutOfRange { element, n });
            }
            if s.len() != r {
                return Err(Error::RankMismatch { set: s.to_vec(), r });
            }
        }
        sets.par_sort_unstable();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(w[0].to_vec()));
        }
        Ok(Family { n, r, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members in canonical order.
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> VertexSet {
        self.sets.iter().fold(VertexSet::EMPTY, |acc, &s| acc.union(s))
    }

    /// Whether `set` meets every member.
    pub fn is_transversal(&self, set: VertexSet) -> bool {
        self.sets.iter().all(|&m| m.intersects(set))
    }

    /// First disjoint pair in canonical order, if any.
    pub fn disjoint_pair(&self) -> Option<(VertexSet, VertexSet)> {
        self.sets
            .par_iter()
            .enumerate()
            .find_map_first(|(i, &a)| self.sets[i + 1..].iter().find(|&&b| a.is_disjoint(b)).map(|&b| (a, b)))
    }

    pub fn is_intersecting(&self) -> bool {
        self.disjoint_pair().is_none()
    }

    /// The lexicographically first r-set outside the family that meets every
    /// member, or `None` when the family is maximal intersecting.
    ///
    /// Scans all of `C([n], r)`, refusing scans above [`MAX_SCAN`].
    pub fn addable_set(&self) -> Result<Option<VertexSet>> {
        if let Some((a, b)) = self.disjoint_pair() {
            return Err(Error::NotIntersecting(a, b));
        }
        let candidates = binomial_u128(self.n, self.r);
        if candidates > MAX_SCAN {
            return Err(Error::TooLargeToVerify(format!("C({}, {}) = {candidates} candidates", self.n, self.r)));
        }
        let pool: Vec<usize> = (1..=self.n).collect();
        let chunks = chunked_by_first(&pool, self.r);
        Ok(chunks.into_par_iter().find_map_first(|(head, rest, k)| {
            Combinations::new(rest, k)
                .map(|tail| tail.union(head))
                .find(|&g| self.is_transversal(g) && !self.contains(g))
        }))
    }

    pub fn is_maximal_intersecting(&self) -> Result<bool> {
        Ok(self.addable_set()?.is_none())
    }

    pub fn covers_universe(&self) -> bool {
        self.support() == VertexSet::universe(self.n)
    }

    /// Vertices of `[1, n]` contained in no member.
    pub fn uncovered(&self) -> Vec<usize> {
        VertexSet::universe(self.n).difference(self.support()).to_vec()
    }

    /// Minimum size of a vertex set meeting every member.
    ///
    /// Iterative deepening over a bounded search tree: the first member missed
    /// by the partial transversal must be hit by one of its own elements.
    pub fn covering_number(&self) -> usize {
        if self.sets.is_empty() {
            return 0;
        }
        (1..).find(|&depth| self.hit_within(VertexSet::EMPTY, depth)).unwrap()
    }

    fn hit_within(&self, chosen: VertexSet, budget: usize) -> bool {
        match self.sets.iter().find(|m| m.is_disjoint(chosen)) {
            None => true,
            Some(_) if budget == 0 => false,
            Some(&missed) => missed.iter().any(|v| self.hit_within(chosen.with(v), budget - 1)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Family> {
        let raw: FamilyJson = serde_json::from_str(text)?;
        Family::try_from(raw)
    }
}
