//! Ordered energy corrections `E_k` and their partial sums.

use crate::error::Error;
use crate::rational::Rational;
use crate::table::Family;

/// Energy corrections `E_{k_min} ..= E_K` of an hbar expansion.
///
/// The oscillator series starts at `k_min = 1` (the classical particle sits
/// at the bottom of the well, so the energy itself is first order in hbar);
/// the Coulomb series starts at `k_min = 0` after the scale transformation
/// that trades the Coulomb singularity for an overall `hbar^-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergySeries {
    family: Family,
    k_min: usize,
    corrections: Vec<Rational>,
}

impl EnergySeries {
    pub(crate) fn new(family: Family, k_min: usize, corrections: Vec<Rational>) -> Self {
        EnergySeries {
            family,
            k_min,
            corrections,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn max_order(&self) -> usize {
        self.k_min + self.corrections.len() - 1
    }

    pub fn correction(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(self.k_min)
            .and_then(|idx| self.corrections.get(idx))
    }

    pub fn require(&self, k: usize) -> Result<&Rational, Error> {
        self.correction(k).ok_or(Error::OrderOutOfRange {
            requested: k,
            k_min: self.k_min,
            k_max: self.max_order(),
        })
    }

    /// `(k, E_k)` pairs in ascending order.
    pub fn corrections(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.corrections
            .iter()
            .enumerate()
            .map(move |(idx, value)| (self.k_min + idx, value))
    }

    /// Perturbative estimate through order `upto`, evaluated at `hbar`.
    ///
    /// Oscillator: `sum_{k<=upto} E_k hbar^k`. Coulomb family:
    /// `hbar^-2 sum_{k<=upto} E_k hbar^{2k}`, so `hbar` must be nonzero
    /// there. At `hbar = 1` both collapse to the plain sum, which is the
    /// convention of the reference tables (Coulomb units).
    pub fn partial_sum(&self, upto: usize, hbar: &Rational) -> Result<Rational, Error> {
        if upto > self.max_order() || upto < self.k_min {
            return Err(Error::OrderOutOfRange {
                requested: upto,
                k_min: self.k_min,
                k_max: self.max_order(),
            });
        }
        match self.family {
            Family::Oscillator => {
                let mut sum = Rational::zero();
                let mut power = hbar.clone(); // hbar^1; k_min = 1
                for (k, value) in self.corrections() {
                    if k > upto {
                        break;
                    }
                    sum += value * &power;
                    power *= hbar;
                }
                Ok(sum)
            }
            Family::Coulomb => {
                if hbar.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let hbar_sq = hbar * hbar;
                let mut sum = Rational::zero();
                let mut power = Rational::one(); // hbar^{2k}, k = 0
                for (k, value) in self.corrections() {
                    if k > upto {
                        break;
                    }
                    sum += value * &power;
                    power *= &hbar_sq;
                }
                sum.checked_div(&hbar_sq)
            }
        }
    }

    /// Binding energy `-E` through order `upto`; the sign the reference
    /// tables print for bound states.
    pub fn binding_partial_sum(&self, upto: usize, hbar: &Rational) -> Result<Rational, Error> {
        Ok(-self.partial_sum(upto, hbar)?)
    }
}
