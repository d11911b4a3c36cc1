use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("arity must be positive")]
    ZeroArity,

    #[error("exponent {value} exceeds the cap {cap}")]
    ExponentTooLarge { value: u64, cap: u32 },

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("power must be at least 1, got {0}")]
    InvalidPower(u32),

    #[error("degree {degree} outside [{min}, {max}]")]
    DegreeOutOfRange { degree: u32, min: u32, max: u32 },

    #[error("generator {generator} does not divide the box corner {ceiling}")]
    InvalidBox { generator: String, ceiling: String },

    #[error("box with {0} lattice points is too large to index")]
    BoxTooLarge(u128),

    #[error("denominator is not contained in numerator")]
    NotContained,

    #[error("the poset is empty (zero module)")]
    EmptyPoset,

    #[error("monomial {0} is not an element of the poset")]
    NotInPoset(String),

    #[error("the ideal is the unit ideal, so S/I = 0")]
    UnitIdeal,

    #[error("partition failed verification: {0}")]
    Unverified(String),

    #[error("search timed out after {0:?}")]
    Timeout(Duration),
}

pub type Result<T> = std::result::Result<T, Error>;
