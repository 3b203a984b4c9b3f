//! Assembly indices of strings.
//!
//! The basic units are single symbols (index 0, reusable without limit). A
//! joining step concatenates two objects that are already available, and its
//! product becomes available to every later step. The assembly index of a
//! string is the length of the shortest such pathway ending at the string.

mod bounds;
mod canon;
mod ensemble;
mod oracle;
mod path;
mod search;

pub use bounds::{assembly_lower_bound, assembly_upper_bound};
pub use canon::canonicalize;
pub use ensemble::{assembly_equation, Ensemble, EnsembleEntry};
pub use oracle::{oracle_assembly_index, ORACLE_MAX_LEN};
pub use path::{doubling_string, AssemblyPath, JoinStep, ObjectRef};
pub use search::{assembly_index, assembly_index_uncached, clear_assembly_cache, AssemblyResult, DEFAULT_LENGTH_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssemblyError {
    #[error("empty string: objects must have at least one part")]
    Empty,
    #[error("string of length {len} exceeds the oracle budget of {max}")]
    OracleBudget { len: usize, max: usize },
    #[error("assembly index of {object:?} is not exact under length cap {cap} (bounds {lower}..={upper})")]
    Inexact { object: String, cap: usize, lower: usize, upper: usize },
    #[error("invalid assembly path: {0}")]
    InvalidPath(String),
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
}
