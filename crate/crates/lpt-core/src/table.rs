//! Triangular table of the Laurent coefficients `C^k_i` of the logarithmic
//! derivative, one row per power of hbar.

use crate::error::Error;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Which potential family a table (or energy series) was computed for.
///
/// The family fixes the Laurent structure of `C_k(r)` about the origin:
/// leading power `1 - 2k` with even steps for the oscillator, `-k` with
/// unit steps for the Coulomb family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Oscillator,
    Coulomb,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Oscillator => "oscillator",
            Family::Coulomb => "coulomb",
        }
    }

    /// Stored series indices run `0 ..= max_index(K)` in every row.
    pub fn max_index(&self, order: usize) -> usize {
        match self {
            // Energy extraction reads indices p <= k-1 only.
            Family::Oscillator => order.saturating_sub(1),
            // The derivative term of the energy formula reads C^{k-1}_k.
            Family::Coulomb => order,
        }
    }
}

/// Coefficients `C^k_i` for `k = 0..=K`, filled row by row by the family
/// drivers. Rows under construction simply have fewer entries; a read past
/// the filled region is a fill-order bug and comes back as
/// [`Error::MissingEntry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    family: Family,
    order: usize,
    rows: Vec<Vec<Rational>>,
}

impl CoefficientTable {
    pub(crate) fn with_capacity(family: Family, order: usize) -> Self {
        CoefficientTable {
            family,
            order,
            rows: Vec::with_capacity(order + 1),
        }
    }

    pub(crate) fn push_row(&mut self, row: Vec<Rational>) {
        debug_assert!(self.rows.len() <= self.order);
        self.rows.push(row);
    }

    pub(crate) fn push_entry(&mut self, value: Rational) {
        self.rows
            .last_mut()
            .expect("push_entry before any row exists")
            .push(value);
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Maximum order K the table was built for.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_index(&self) -> usize {
        self.family.max_index(self.order)
    }

    pub fn entry(&self, k: usize, i: usize) -> Option<&Rational> {
        self.rows.get(k).and_then(|row| row.get(i))
    }

    pub fn require(&self, k: usize, i: usize) -> Result<&Rational, Error> {
        self.entry(k, i).ok_or(Error::MissingEntry { k, i })
    }

    /// Copy of the table with a single entry shifted by `delta`.
    ///
    /// Exists for sensitivity checks: any nonzero perturbation must show up
    /// in some Riccati residual.
    pub fn with_perturbed_entry(
        &self,
        k: usize,
        i: usize,
        delta: &Rational,
    ) -> Result<Self, Error> {
        let mut copy = self.clone();
        let cell = copy
            .rows
            .get_mut(k)
            .and_then(|row| row.get_mut(i))
            .ok_or(Error::MissingEntry { k, i })?;
        *cell = &*cell + delta;
        Ok(copy)
    }

    /// `C_k(r)` as a Laurent series in absolute powers of `r`, certified
    /// exactly over the stored index budget.
    pub fn row_series(&self, k: usize) -> Result<TruncatedSeries, Error> {
        let row = self.rows.get(k).ok_or(Error::MissingEntry { k, i: 0 })?;
        match self.family {
            Family::Oscillator => {
                // C_k(r) = r^{1-2k} sum_i C^k_i r^{2i}
                let lead = 1 - 2 * k as i64;
                let len = if row.is_empty() { 0 } else { 2 * row.len() - 1 };
                let mut coeffs = vec![Rational::zero(); len];
                for (i, value) in row.iter().enumerate() {
                    coeffs[2 * i] = value.clone();
                }
                Ok(TruncatedSeries::new(lead, coeffs))
            }
            Family::Coulomb => {
                // C_0 is the constant C^0_0; C_k(r) = r^{-k} sum_i C^k_i r^i
                let lead = -(k as i64);
                Ok(TruncatedSeries::new(lead, row.clone()))
            }
        }
    }
}
