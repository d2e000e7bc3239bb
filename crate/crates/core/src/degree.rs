use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::numeric::rational;

/// Per-vertex degrees of a family with their extremes and exact ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    /// `degrees[v - 1]` is the number of members containing `v`.
    pub degrees: Vec<u64>,
    pub delta_max: u64,
    pub delta_min: u64,
    /// `delta_max / delta_min`, absent when some vertex is uncovered.
    pub ratio: Option<BigRational>,
}

impl DegreeProfile {
    pub fn of(family: &Family) -> DegreeProfile {
        let mut degrees = vec![0u64; family.n()];
        for set in family.sets() {
            for v in set.iter() {
                degrees[v - 1] += 1;
            }
        }
        let delta_max = degrees.iter().copied().max().unwrap_or(0);
        let delta_min = degrees.iter().copied().min().unwrap_or(0);
        let ratio = (delta_min > 0).then(|| rational(delta_max, delta_min));
        DegreeProfile { degrees, delta_max, delta_min, ratio }
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v - 1]
    }

    /// The ratio, or `UncoveredVertex` naming the first vertex of degree 0.
    pub fn require_ratio(&self) -> Result<&BigRational> {
        self.ratio.as_ref().ok_or_else(|| {
            let v = self.degrees.iter().position(|&d| d == 0).map_or(0, |i| i + 1);
            Error::UncoveredVertex(v)
        })
    }

    pub fn is_regular(&self) -> bool {
        self.delta_max == self.delta_min
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }
}

pub fn degree_profile(family: &Family) -> DegreeProfile {
    DegreeProfile::of(family)
}
