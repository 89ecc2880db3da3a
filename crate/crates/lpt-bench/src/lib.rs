//! Shared fixtures for the benchmark targets.

use lpt_core::coulomb::{debye_taylor, CoulombPotential, DebyeSpec};
use lpt_core::oscillator::OscillatorPotential;
use lpt_core::Rational;

/// Unit-mass, unit-frequency quartic oscillator with coupling 1/10.
pub fn quartic_potential() -> OscillatorPotential {
    OscillatorPotential::new(
        Rational::one(),
        Rational::one(),
        vec![Rational::ratio(1, 10)],
    )
    .expect("valid fixture")
}

/// Debye potential at kappa = 1/5 in Coulomb units, expanded far enough for
/// an order-`order` energy series.
pub fn debye_potential(order: usize) -> CoulombPotential {
    let spec = DebyeSpec::new(Rational::one(), Rational::ratio(1, 5)).expect("valid fixture");
    debye_taylor(&spec, order + 1)
}
