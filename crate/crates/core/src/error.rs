use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid root of unity exp(2*pi*i*{index}/{order}): need order >= 2 and 1 <= index <= order - 1")]
    InvalidRoot { order: u64, index: u64 },

    #[error("bracket denominator vanishes for half-root exp(i*pi*{index}/{order})")]
    DegenerateRoot { order: u64, index: i64 },

    #[error("real deformation parameter must be finite and strictly positive, got {0}")]
    InvalidReal(f64),

    #[error("dimension {dim} is too small, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
