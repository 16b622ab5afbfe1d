//! Deduplicated shape catalogs.

use num_bigint::BigUint;
use thiserror::Error;

use crate::shape::{CanonicalCode, Family};

/// Whether an enumeration retains the codes or only counts classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    CountOnly,
}

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("class count exceeds the configured cap of {cap}")]
    ResourceCap { cap: usize },
}

/// Default retention cap for full-mode enumerations.
pub const DEFAULT_CAP: usize = 1_000_000;

/// The deduplicated set of canonical codes for one family and one input.
/// Its cardinality is the big Ramsey degree.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub family: Family,
    /// Human-readable description of the input (`n`, or a structure digest).
    pub parameter: String,
    pub count: BigUint,
    /// Sorted, duplicate-free; `None` in count-only mode.
    pub codes: Option<Vec<CanonicalCode>>,
}

impl Catalog {
    pub fn with_codes(family: Family, parameter: String, codes: Vec<CanonicalCode>) -> Self {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        Catalog { family, parameter, count: BigUint::from(codes.len()), codes: Some(codes) }
    }

    pub fn count_only(family: Family, parameter: String, count: BigUint) -> Self {
        Catalog { family, parameter, count, codes: None }
    }
}
