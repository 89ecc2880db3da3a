use thiserror::Error;

/// Errors surfaced by the exact core, the recursion drivers and the
/// numerical eigenvalue solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("no exact rational square root of {value}")]
    NotAPerfectSquare { value: String },

    #[error("cannot parse `{0}` as an exact rational")]
    ParseRational(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no bound state: leading Coulomb coefficient V_0 must be negative, got {v0}")]
    NoBoundState { v0: String },

    #[error(
        "closed-form corrections are only tabulated through order {max}, requested {requested}"
    )]
    UnsupportedOrder { requested: usize, max: usize },

    #[error(
        "coefficient C^{k}_{i} is not present in the table (fill-order bug or table too shallow)"
    )]
    MissingEntry { k: usize, i: usize },

    #[error("energy series holds orders {k_min}..={k_max}, requested {requested}")]
    OrderOutOfRange {
        requested: usize,
        k_min: usize,
        k_max: usize,
    },

    #[error("no level with {nodes} nodes inside the energy bracket [{lo}, {hi}]")]
    NoLevelInBracket { nodes: u32, lo: f64, hi: f64 },

    #[error("eigenvalue search did not converge after {iterations} iterations; last bracket [{lo}, {hi}]")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },
}
