//! Closed-form degrees and bounds, and the removable-element partition used
//! to bound the degree ratio from above.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::constructions::check_plane_window;
use crate::degree::degree_profile;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::numeric::{binomial, rational, Combinations};
use crate::vertex_set::VertexSet;

/// Bounds on the extremal degree ratios of maximal intersecting families
/// of r-subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub r: usize,
    /// `n / r²`, a lower bound on the minimum ratio.
    pub m_lower: BigRational,
    /// `n + r^r`, an upper bound on the maximum ratio.
    pub max_upper: BigUint,
    /// `n - 2r + 3 - (n - 2r + 2) / C(2r - 3, r - 2)`, the ratio achieved by
    /// the four-part construction; present when `2r + 2 < n` and `r >= 2`.
    pub max_lower: Option<BigRational>,
}

pub fn bounds(n: usize, r: usize) -> Result<BoundsReport> {
    if r == 0 || r > n {
        return Err(Error::BadParameters(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let m_lower = rational(n as u64, (r * r) as u64);
    let max_upper = BigUint::from(n) + BigUint::from(r).pow(r as u32);
    let max_lower = (r >= 2 && 2 * r + 2 < n).then(|| {
        let tail = (n - 2 * r + 2) as u64;
        let c = BigInt::from(binomial(2 * r as i64 - 3, r as i64 - 2));
        BigRational::from_integer(BigInt::from(tail + 1)) - BigRational::new(BigInt::from(tail), c)
    });
    Ok(BoundsReport { n, r, m_lower, max_upper, max_lower })
}

/// Degree of vertex 1 and of each vertex `i >= 2r - 1` in the four-part
/// construction.
pub fn thm1ii_degree_formula(n: usize, r: usize) -> Result<(BigUint, BigUint)> {
    if r < 3 || 2 * r + 2 >= n {
        return Err(Error::BadParameters(format!("need r >= 3 and 2r + 2 < n, got n = {n}, r = {r}")));
    }
    let t = 2 * r as i64 - 3;
    let tail_degree = binomial(t, r as i64 - 2);
    let one_degree = binomial(t, r as i64 - 1) + (&tail_degree - 1u32) * BigUint::from(n - 2 * r + 2);
    Ok((one_degree, tail_degree))
}

/// Closed-form degrees of the plane-based family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneDegrees {
    /// Degree of each point of the plane.
    pub inside: BigUint,
    /// Degree of each vertex outside the plane; `None` when there are none.
    pub outside: Option<BigUint>,
    pub ratio: BigRational,
}

pub fn plane_degree_formula(n: usize, r: usize, p: u64) -> Result<PlaneDegrees> {
    let size = check_plane_window(n, r, p)?;
    let (n, r, p) = (n as i64, r as i64, p as i64);
    let shared = binomial(n - p - 2, r - p - 2);
    let inside = BigUint::from((p + 1) as u64) * binomial(n - p - 1, r - p - 1) + BigUint::from((p * p) as u64) * &shared;
    if n as usize == size {
        return Ok(PlaneDegrees { inside, outside: None, ratio: BigRational::one() });
    }
    let outside = BigUint::from(size) * shared;
    if outside.is_zero() {
        return Err(Error::UncoveredUniverse(size + 1));
    }
    let ratio = BigRational::new(inside.clone().into(), outside.clone().into());
    Ok(PlaneDegrees { inside, outside: Some(outside), ratio })
}

/// Split of a maximal intersecting family into members with a removable
/// element (some `x` with `F ∖ {x}` still meeting every member) and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub f1: Family,
    pub f2: Family,
    /// Smallest removable element of each member of `f1`.
    pub removable: BTreeMap<VertexSet, usize>,
    /// `dj[j - 1]` is the largest number of `f2` members sharing a common
    /// j-subset; empty when `f2` is empty.
    pub dj: Vec<u64>,
}

fn require_maximal(family: &Family) -> Result<()> {
    match family.addable_set() {
        Ok(Some(g)) => Err(Error::NotMaximal(g)),
        Ok(None) | Err(Error::TooLargeToVerify(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Partitions a maximal intersecting family by removability. Maximality is
/// verified when the scan is within limits and trusted otherwise.
pub fn classify_f1_f2(family: &Family) -> Result<PartitionReport> {
    require_maximal(family)?;
    let mut removable = BTreeMap::new();
    let mut rest = Vec::new();
    for &set in family.sets() {
        match set.iter().find(|&x| family.is_transversal(set.without(x))) {
            Some(x) => {
                removable.insert(set, x);
            }
            None => rest.push(set),
        }
    }
    let (n, r) = (family.n(), family.r());
    let f1 = Family::from_sets(n, r, removable.keys().copied())?;
    let f2 = Family::from_sets(n, r, rest)?;
    let dj = subset_multiplicities(&f2);
    Ok(PartitionReport { f1, f2, removable, dj })
}

fn subset_multiplicities(family: &Family) -> Vec<u64> {
    if family.is_empty() {
        return Vec::new();
    }
    (1..=family.r())
        .map(|j| {
            let mut counts: HashMap<VertexSet, u64> = HashMap::new();
            for &set in family.sets() {
                let elements = set.to_vec();
                for sub in Combinations::new(&elements, j) {
                    *counts.entry(sub).or_default() += 1;
                }
            }
            counts.into_values().max().unwrap_or(0)
        })
        .collect()
}

/// Which inequality of the recursive count failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim1Violation {
    /// `|F₂| > r^r`.
    TotalExceedsPower,
    /// `|F₂| > r · d₁`.
    TotalExceedsFirstLayer,
    /// `d_j > r · d_{j+1}` at the given `j`.
    Layer(usize),
}

/// Checks `|F₂| <= r^r`, `|F₂| <= r d₁` and `d_j <= r d_{j+1}` for `j < r`.
pub fn check_claim1(report: &PartitionReport, r: usize) -> std::result::Result<(), Claim1Violation> {
    if report.f2.is_empty() {
        return Ok(());
    }
    let size = report.f2.len() as u64;
    let r64 = r as u64;
    if BigUint::from(size) > BigUint::from(r).pow(r as u32) {
        return Err(Claim1Violation::TotalExceedsPower);
    }
    if size > r64 * report.dj[0] {
        return Err(Claim1Violation::TotalExceedsFirstLayer);
    }
    match (1..r).find(|&j| report.dj[j - 1] > r64 * report.dj[j]) {
        Some(j) => Err(Claim1Violation::Layer(j)),
        None => Ok(()),
    }
}

/// Outcome of [`f_map_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMapReport {
    /// The fixed vertex of minimum degree.
    pub pivot: usize,
    /// Whether every image is a member.
    pub images_in_family: bool,
    pub max_preimage: usize,
    /// `n - r + 1`.
    pub bound: usize,
    pub ok: bool,
}

/// Maps each member with a removable element onto a member through the
/// smallest minimum-degree vertex `y`: unchanged if it already contains `y`,
/// otherwise with its smallest removable element swapped for `y`. Reports the
/// largest fibre against `n - r + 1`.
pub fn f_map_check(family: &Family) -> Result<FMapReport> {
    require_maximal(family)?;
    if family.covering_number() == family.r() {
        return Err(Error::TauEqualsR(family.r()));
    }
    let partition = classify_f1_f2(family)?;
    let profile = degree_profile(family);
    let pivot = (1..=family.n()).find(|&v| profile.degree(v) == profile.delta_min).expect("nonempty universe");
    let mut fibres: HashMap<VertexSet, usize> = HashMap::new();
    let mut images_in_family = true;
    for (&set, &g) in &partition.removable {
        let image = if set.contains(pivot) { set } else { set.without(g).with(pivot) };
        images_in_family &= family.contains(image);
        *fibres.entry(image).or_default() += 1;
    }
    let max_preimage = fibres.into_values().max().unwrap_or(0);
    let bound = family.n() - family.r() + 1;
    Ok(FMapReport { pivot, images_in_family, max_preimage, bound, ok: images_in_family && max_preimage <= bound })
}
