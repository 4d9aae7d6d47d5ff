//! Locally most reliable two-terminal graphs.
//!
//! Graph primitives, the six extremal families, degree-based invariants, the
//! sign classification of `(n, m)`, exact two-terminal reliability, an exact
//! real-root check over `Q(sqrt 2)`, and the verification scans built on them.

pub mod algebra;
pub mod classification;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod reliability;
pub mod scan;

pub use classification::{classify, PairClass, PairSign};
pub use constructions::{build_family, build_g, build_h, FamilyTag};
pub use error::{Error, Result};
pub use graph::{CanonicalKey, DegreeSequence, Graph, TwoTerminalGraph};
pub use invariants::{invariant_bundle, InvariantBundle};
pub use reliability::{n_vector, reliability_at, NVector};
