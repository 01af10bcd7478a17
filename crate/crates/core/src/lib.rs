//! Exact computations for matching and intersection extremal problems on
//! r-partite r-graphs: reference constructions, invariants (matching number,
//! transversal number, t-intersection), coordinate shifting, sunflower and
//! base machinery, and an exhaustive branch-and-bound search for the
//! non-trivial extremal values m_0 and iota_0.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod io;
pub mod model;
pub mod random;
pub mod search;
pub mod shifting;
pub mod sunflower;
pub mod theorems;

pub use error::{Error, Result};
pub use model::{Edge, Family, PartSpec, SetFamily, Vertex, DEFAULT_VECTOR_LIMIT};

/// Library version, exposed for report headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
