//! Exhaustive enumeration of maximal intersecting families for tiny `(n, r)`.
//!
//! Maximal intersecting families of r-sets are exactly the maximal cliques of
//! the graph on `C([n], r)` joining intersecting pairs. With at most 64
//! r-sets the graph fits in `u64` adjacency masks and the cliques are listed
//! by pivoting Bron–Kerbosch.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::degree::degree_profile;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::numeric::{binomial_u128, ratio_string, Combinations};
use crate::vertex_set::VertexSet;

/// Most r-sets the clique search accepts.
pub const MAX_GRAPH_VERTICES: u128 = 64;

struct IntersectionGraph {
    sets: Vec<VertexSet>,
    adjacency: Vec<u64>,
}

impl IntersectionGraph {
    fn new(n: usize, r: usize) -> IntersectionGraph {
        let pool: Vec<usize> = (1..=n).collect();
        let sets: Vec<VertexSet> = Combinations::new(&pool, r).collect();
        let adjacency = sets
            .iter()
            .enumerate()
            .map(|(i, a)| {
                sets.iter().enumerate().filter(|&(j, b)| j != i && a.intersects(*b)).fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        IntersectionGraph { sets, adjacency }
    }

    /// Vertex of `candidates ∪ excluded` with the most neighbours among the
    /// candidates; lowest index on ties.
    fn pivot(&self, candidates: u64, excluded: u64) -> usize {
        let mut best: Option<(u32, usize)> = None;
        let mut pool = candidates | excluded;
        while pool != 0 {
            let u = pool.trailing_zeros() as usize;
            pool &= pool - 1;
            let score = (candidates & self.adjacency[u]).count_ones();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, u));
            }
        }
        best.expect("pivot pool is nonempty").1
    }

    fn expand(&self, clique: u64, mut candidates: u64, mut excluded: u64, out: &mut Vec<u64>) {
        if candidates == 0 {
            if excluded == 0 {
                out.push(clique);
            }
            return;
        }
        let u = self.pivot(candidates, excluded);
        let mut branch = candidates & !self.adjacency[u];
        while branch != 0 {
            let bit = branch & branch.wrapping_neg();
            branch &= branch - 1;
            let v = bit.trailing_zeros() as usize;
            let adj = self.adjacency[v];
            self.expand(clique | bit, candidates & adj, excluded & adj, out);
            candidates &= !bit;
            excluded |= bit;
        }
    }

    /// All maximal cliques, top-level branches explored in parallel.
    fn maximal_cliques(&self) -> Vec<u64> {
        let all = if self.sets.len() == 64 { u64::MAX } else { (1u64 << self.sets.len()) - 1 };
        if all == 0 {
            return vec![0];
        }
        let u = self.pivot(all, 0);
        let mut branches = Vec::new();
        let (mut candidates, mut excluded) = (all, 0u64);
        let mut branch = all & !self.adjacency[u];
        while branch != 0 {
            let bit = branch & branch.wrapping_neg();
            branch &= branch - 1;
            let adj = self.adjacency[bit.trailing_zeros() as usize];
            branches.push((bit, candidates & adj, excluded & adj));
            candidates &= !bit;
            excluded |= bit;
        }
        branches
            .into_par_iter()
            .flat_map_iter(|(clique, cand, excl)| {
                let mut out = Vec::new();
                self.expand(clique, cand, excl, &mut out);
                out
            })
            .collect()
    }
}

fn check_size(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::BadParameters(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let vertices = binomial_u128(n, r);
    if vertices > MAX_GRAPH_VERTICES {
        return Err(Error::TooLargeToEnumerate(vertices));
    }
    Ok(())
}

/// Every maximal intersecting family of r-subsets of `[n]`, in canonical
/// order. With `require_cover`, families missing a vertex are dropped after
/// maximality is decided against all r-sets.
pub fn enumerate_maximal_families(n: usize, r: usize, require_cover: bool) -> Result<Vec<Family>> {
    check_size(n, r)?;
    let graph = IntersectionGraph::new(n, r);
    let mut families: Vec<Vec<VertexSet>> = graph
        .maximal_cliques()
        .into_iter()
        .map(|mask| {
            let mut members = Vec::with_capacity(mask.count_ones() as usize);
            let mut rest = mask;
            while rest != 0 {
                members.push(graph.sets[rest.trailing_zeros() as usize]);
                rest &= rest - 1;
            }
            members
        })
        .collect();
    families.sort_unstable();
    let universe = VertexSet::universe(n);
    families
        .into_iter()
        .filter(|sets| !require_cover || sets.iter().fold(VertexSet::EMPTY, |a, &s| a.union(s)) == universe)
        .map(|sets| Family::from_sets(n, r, sets))
        .collect()
}

/// Exact minimum and maximum degree ratio over the enumerated families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub r: usize,
    pub require_cover: bool,
    /// Number of enumerated families (after the cover filter, if any).
    pub family_count: u64,
    pub min_ratio: BigRational,
    pub min_witness: Family,
    pub max_ratio: BigRational,
    pub max_witness: Family,
}

#[derive(Serialize)]
struct ExtremalJson {
    n: usize,
    r: usize,
    families: u64,
    m: String,
    m_witness: Vec<Vec<usize>>,
    #[serde(rename = "M")]
    max: String,
    #[serde(rename = "M_witness")]
    max_witness: Vec<Vec<usize>>,
}

impl ExtremalReport {
    pub fn to_json(&self) -> String {
        let sets = |f: &Family| f.sets().iter().map(|s| s.to_vec()).collect();
        let wire = ExtremalJson {
            n: self.n,
            r: self.r,
            families: self.family_count,
            m: ratio_string(&self.min_ratio),
            m_witness: sets(&self.min_witness),
            max: ratio_string(&self.max_ratio),
            max_witness: sets(&self.max_witness),
        };
        serde_json::to_string(&wire).expect("report serialization cannot fail")
    }
}

/// Extremal ratios over all maximal families; families with an uncovered
/// vertex (possible only without `require_cover`) have no ratio and are
/// skipped. Witnesses are the first extremal families in canonical order.
pub fn extremal_ratios(n: usize, r: usize, require_cover: bool) -> Result<ExtremalReport> {
    let families = enumerate_maximal_families(n, r, require_cover)?;
    extremal_over(n, r, require_cover, &families)
}

pub fn extremal_over(n: usize, r: usize, require_cover: bool, families: &[Family]) -> Result<ExtremalReport> {
    let mut min: Option<(BigRational, &Family)> = None;
    let mut max: Option<(BigRational, &Family)> = None;
    for family in families {
        let Some(ratio) = degree_profile(family).ratio else { continue };
        if min.as_ref().is_none_or(|(m, _)| ratio < *m) {
            min = Some((ratio.clone(), family));
        }
        if max.as_ref().is_none_or(|(m, _)| ratio > *m) {
            max = Some((ratio, family));
        }
    }
    let ((min_ratio, min_witness), (max_ratio, max_witness)) = min.zip(max).ok_or(Error::NoFamilies)?;
    Ok(ExtremalReport {
        n,
        r,
        require_cover,
        family_count: families.len() as u64,
        min_ratio,
        min_witness: min_witness.clone(),
        max_ratio,
        max_witness: max_witness.clone(),
    })
}
