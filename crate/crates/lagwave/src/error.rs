//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric parameter violates its domain constraint.
    #[error("parameter {name} = {value} violates constraint: {constraint}")]
    Parameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The gamma function was evaluated at a pole.
    #[error("gamma function pole at non-positive integer {0}")]
    GammaPole(f64),

    /// A point lies outside the domain required by the operation.
    #[error("point ({re}, {im}) outside required domain: {constraint}")]
    Domain {
        re: f64,
        im: f64,
        constraint: &'static str,
    },

    /// Input too small or degenerate to carry out the operation.
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// Density estimation could not certify coverage of the ball around a
    /// grid point.
    #[error("coverage not certified for grid point ({re}, {im}): {detail}")]
    Coverage { re: f64, im: f64, detail: &'static str },

    /// An iterative procedure failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(&'static str),

    /// A matrix handed to the eigensolver is not Hermitian within tolerance.
    #[error("matrix not Hermitian: max deviation {deviation}")]
    NonHermitian { deviation: f64 },

    /// Invalid run configuration (CLI / config-file level).
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Exit code contract: 2 for bad input, 3 for coverage/convergence
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Coverage { .. } | Error::Convergence(_) => 3,
            _ => 2,
        }
    }
}
