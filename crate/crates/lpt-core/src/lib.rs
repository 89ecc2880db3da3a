//! Exact hbar-expansion series for radial bound states.
//!
//! Two potential families are supported end to end:
//!
//! * the spherical anharmonic oscillator
//!   `V(r) = m w^2 r^2/2 + sum f_i r^{2i+2}` ([`oscillator`]), and
//! * the screened Coulomb potential `V(r) = (1/r) sum V_i r^i`, including
//!   its Debye specialization `-(alpha/r) exp(-kappa r)` ([`coulomb`]).
//!
//! For each family the logarithmic derivative of the wave function is
//! expanded in powers of hbar around the classical particle resting at the
//! potential minimum, a residue quantization condition pins one Laurent
//! coefficient per order, and simple recursions deliver the exact rational
//! energy corrections `E_k` for ground and excited states alike — no
//! sums over intermediate states, no special-casing of nodes.
//!
//! Everything in the recursion layer is exact ([`rational::Rational`]);
//! the only floating point lives in [`oracle`], an independent Numerov
//! eigenvalue solver used to cross-check summed series, and [`verify`]
//! closes the loop by substituting computed tables back into the Riccati
//! hierarchy through an unrelated series-algebra path.

pub mod coulomb;
pub mod energy;
pub mod error;
pub mod oracle;
pub mod oscillator;
pub mod qn;
pub mod rational;
pub mod series;
pub mod table;
pub mod verify;

pub use energy::EnergySeries;
pub use error::Error;
pub use qn::QuantumNumbers;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use table::{CoefficientTable, Family};
