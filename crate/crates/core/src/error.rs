use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe size {0} exceeds the supported maximum of 128")]
    UniverseTooLarge(usize),
    #[error("set {set:?} is not a {r}-set of distinct elements")]
    RankMismatch { set: Vec<usize>, r: usize },
    #[error("set {0:?} listed more than once")]
    DuplicateSet(Vec<usize>),
    #[error("element {element} lies outside [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("family would have {0} members, above the explicit-family cap")]
    TooManyMembers(u128),
    #[error("family is not intersecting: {0:?} and {1:?} are disjoint")]
    NotIntersecting(VertexSet, VertexSet),
    #[error("family is not maximal: {0:?} can be added")]
    NotMaximal(VertexSet),
    #[error("instance too large to verify: {0}")]
    TooLargeToVerify(String),
    #[error("instance too large to enumerate: C(n, r) = {0} exceeds 64")]
    TooLargeToEnumerate(u128),
    #[error("vertex {0} has degree 0, so the degree ratio is undefined")]
    UncoveredVertex(usize),
    #[error("construction leaves vertex {0} uncovered")]
    UncoveredUniverse(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("no prime p with 2r/3 < p < 4r/5 for r = {0}")]
    NoPrimeInWindow(u64),
    #[error("no feasible (k, p, s) within universe cap {0}")]
    NoFeasibleParams(usize),
    #[error("covering number equals r = {0}; the removal mapping is undefined")]
    TauEqualsR(usize),
    #[error("no maximal intersecting family with a defined degree ratio")]
    NoFamilies,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UniverseTooLarge(_) => "UniverseTooLarge",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::DuplicateSet(_) => "DuplicateSet",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::TooManyMembers(_) => "TooManyMembers",
            Error::NotIntersecting(..) => "NotIntersecting",
            Error::NotMaximal(_) => "NotMaximal",
            Error::TooLargeToVerify(_) => "TooLargeToVerify",
            Error::TooLargeToEnumerate(_) => "TooLargeToEnumerate",
            Error::UncoveredVertex(_) => "UncoveredVertex",
            Error::UncoveredUniverse(_) => "UncoveredUniverse",
            Error::NotPrime(_) => "NotPrime",
            Error::BadParameters(_) => "BadParameters",
            Error::NoPrimeInWindow(_) => "NoPrimeInWindow",
            Error::NoFeasibleParams(_) => "NoFeasibleParams",
            Error::TauEqualsR(_) => "TauEqualsR",
            Error::NoFamilies => "NoFamilies",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
