//! Construction, verification and analysis of maximal intersecting families
//! of r-subsets of `[n]`, with exact degree ratios `Δ/δ`.
//!
//! * [`vertex_set`], [`family`], [`degree`]: sets, families, verifiers, degrees.
//! * [`projective`]: PG(2, p) for prime `p` and blocking-set checks.
//! * [`constructions`]: the explicit families and their parameter helpers.
//! * [`analysis`]: closed-form degrees, ratio bounds, and the removable-element
//!   partition.
//! * [`search`]: exhaustive enumeration of all maximal families for tiny `(n, r)`.
//! * [`cli`]: the `ratio-lab` command line.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod degree;
pub mod error;
pub mod family;
pub mod numeric;
pub mod projective;
pub mod search;
pub mod vertex_set;

pub use degree::{degree_profile, DegreeProfile};
pub use error::{Error, Result};
pub use family::Family;
pub use projective::ProjectivePlane;
pub use vertex_set::VertexSet;
