use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{param} = {value} is out of domain: {reason}")]
    Domain {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// A normalization denominator collapsed to zero.
    #[error("degenerate normalization for {what} at {energy} MeV")]
    Degenerate { what: &'static str, energy: f64 },
    #[error("adaptive quadrature did not converge on [{a}, {b}] within depth {depth}")]
    Quadrature { a: f64, b: f64, depth: u32 },
    #[error("momentum radicand {radicand} is negative beyond roundoff")]
    NegativeRadicand { radicand: f64 },
    #[error("chi-square input: {0}")]
    ChiSquare(String),
    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
