//! Exact Stanley depth for monomial ideals `I` and quotients `I/J`.
//!
//! The Stanley depth of `I/J` equals the largest `s` such that the
//! characteristic poset of `I/J` splits into intervals whose tops all have
//! rank at least `s`. This crate builds that poset ([`poset`]), searches for
//! such partitions exactly ([`search`]), verifies them independently
//! ([`partition`], [`decomposition`]), and implements the structural tools
//! around them ([`structure`]): the saturation test for `sdepth = 0`, Janet
//! decompositions, the counting bound for powers of the maximal ideal and the
//! experiment sweeps.

pub mod certificate;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod ideal;
pub mod monomial;
pub mod partition;
pub mod poset;
pub mod search;
pub mod structure;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;

pub use decomposition::{verify_stanley_decomposition, StanleyDecomposition, StanleySpace};
pub use error::{Error, Result};
pub use ideal::{minimalize, MonomialIdeal};
pub use monomial::Monomial;
pub use partition::{to_stanley_decomposition, verify_partition, Interval, IntervalPartition};
pub use poset::{alpha_enumerate, alpha_formula, CharPoset, LevelTable};
pub use search::{
    exists_partition, sdepth_ideal, sdepth_poset, sdepth_quotient, SdepthCertificate, SearchConfig,
    SearchStats,
};

/// Version tag mixed into certificate and cache hashes.
pub const ENGINE_VERSION: &str = concat!("sdepth-core/", env!("CARGO_PKG_VERSION"));
