//! Finite-field toolkit for generalized all-or-nothing transforms:
//! arithmetic in `GF(p^n)`, matrix criteria, array verifiers, explicit
//! constructions and exhaustive search for extremal parameters.

pub mod arrays;
pub mod claim;
pub mod constructions;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod search;

pub use arrays::{Array, Direction, Failure, TransformArray, TupleCount, VerificationReport};
pub use claim::{AontClaim, CriterionFailure, CriterionReport};
pub use constructions::{DifferenceMatrix, DmReport};
pub use error::{Error, Result};
pub use field::{prime_power, Field, FieldElement};
pub use format::Object;
pub use linalg::{Matrix, MinorCheck, SubmatrixWitness};
pub use search::{BoundsReport, MaxStrong, Outcome, SearchConfig, SearchResult};
