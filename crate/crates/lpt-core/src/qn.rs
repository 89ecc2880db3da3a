//! Radial and orbital quantum numbers and the zero counts derived from them.

use crate::rational::Rational;

/// Radial quantum number `n` (number of nodes on the physical half-axis)
/// and orbital quantum number `l`.
///
/// The quantization condition counts the zeros of the wave function pulled
/// into the origin in the semiclassical limit. An even oscillator potential
/// collects the `n` mirror nodes as well, so the two potential families
/// carry different zero counts:
/// `N = 2n + l + 1` (oscillator) and `N = n + l + 1` (Coulomb).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Zero count `N = 2n + l + 1` for the symmetric oscillator.
    pub fn zeros_oscillator(&self) -> u64 {
        2 * u64::from(self.n) + u64::from(self.l) + 1
    }

    /// Zero count `N = n + l + 1` for the Coulomb family.
    pub fn zeros_coulomb(&self) -> u64 {
        u64::from(self.n) + u64::from(self.l) + 1
    }

    /// Centrifugal strength `L = l(l+1)`.
    pub fn centrifugal(&self) -> u64 {
        u64::from(self.l) * (u64::from(self.l) + 1)
    }

    pub fn centrifugal_rational(&self) -> Rational {
        Rational::from(self.centrifugal())
    }
}

/// `eta = N(N+1)` for a given zero count, as it appears in the closed-form
/// corrections.
pub fn eta(zero_count: u64) -> u64 {
    zero_count * (zero_count + 1)
}
