//! Exact secret key agreement calculator for hypergraphical sources.
//!
//! A hypergraphical source places an independent random variable of known
//! entropy on every hyperedge; each user observes the variables of the edges
//! it belongs to. Given such a source and a set of active users, this crate
//! computes, in exact rational arithmetic:
//!
//! * the minimum sum-rate for communication for omniscience ([`capacity::rco`]),
//! * the unconstrained secrecy capacity ([`capacity::cs_unconstrained`]),
//! * the secrecy capacity under a total discussion budget
//!   ([`capacity::cs_at_rate`]) and its full rate-capacity curve
//!   ([`capacity::capacity_curve`]),
//! * the minimum discussion needed for a target key rate
//!   ([`capacity::rs_at_key_rate`]),
//! * optimal decremental reductions of the source ([`capacity::optimal_reduced_source`]),
//! * a family of certified upper bounds on the constrained capacity
//!   ([`bounds`]), and
//! * rank-based checks on GF(2) linear sources, including a worked instance
//!   where the single-letter converse is provably loose ([`linear_source`]).
//!
//! Everything is driven by a dense exact-rational simplex with Bland's rule
//! ([`exactlp`]) and a lazy cutting-plane loop over the exponential constraint
//! family, with an eager full-enumeration path kept alongside for
//! verification ([`verify`]). The `skalc` binary exposes the same operations
//! as subcommands; see `SCHEMA.md` for the input document format.
//!
//! ```
//! use skalc::{capacity, model::HypergraphSource, rat::rat};
//!
//! // Three users, one unit-entropy variable on every pair.
//! let triangle = HypergraphSource::numbered_pin(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
//! let cs = capacity::cs_unconstrained(&triangle, &Default::default()).unwrap();
//! assert_eq!(cs, rat(3, 2));
//! ```

pub mod bounds;
pub mod capacity;
pub mod cli;
pub mod exactlp;
pub mod linear_source;
pub mod model;
pub mod partitions;
pub mod rat;
pub mod verify;

pub use model::{HypergraphSource, SubsetMask};
pub use rat::Rational;

/// Crate-wide error type. CLI exit codes: input/validation errors map to 2,
/// enumeration size limits to 3, infeasible key rates to 4.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid source: {0}")]
    InvalidSource(String),

    #[error("invalid fractional assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} over {actual} vertices exceeds the enumeration limit {limit} (set {} to override)", crate::model::ENUM_LIMIT_ENV)]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("requested key rate {requested} exceeds the secrecy capacity {capacity}")]
    InfeasibleKeyRate { requested: String, capacity: String },

    #[error("edge {index} has non-integer weight {weight}; the GF(2) embedding needs integer bit counts")]
    NonIntegerWeight { index: usize, weight: String },

    #[error("cutting-plane loop exceeded {limit} cuts without converging")]
    SeparationLimit { limit: usize },

    #[error("separation callback returned a row that the current point already satisfies")]
    SeparationStalled,
}

pub type Result<T> = std::result::Result<T, Error>;
