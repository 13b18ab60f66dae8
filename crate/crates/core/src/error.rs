use num_complex::Complex64;
use thiserror::Error;

use crate::plan::{Method, SamplingStrategy};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{method} cannot be sampled with the {strategy} strategy")]
    InvalidStrategy { method: Method, strategy: SamplingStrategy },

    #[error("image function failed at p = {p}: {message}")]
    Image { p: Complex64, message: String },

    #[error("samples do not match the requested inversion: {0}")]
    PlanMismatch(String),

    #[error("sample at p = {p} is significantly complex ({value}); this method needs real image values")]
    ComplexSample { p: Complex64, value: Complex64 },

    #[error("singular or ill-conditioned system (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("non-finite kernel integral between collocation element {row} and element {col}")]
    Quadrature { row: usize, col: usize },

    #[error("point ({x}, {y}) is not inside the domain")]
    OutsideDomain { x: f64, y: f64 },

    #[error("K0/K1 are singular at z = 0")]
    SingularInput,

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
