//! Independent consistency checks on computed coefficient tables.
//!
//! The recursion drivers and these checks deliberately do not share
//! arithmetic: the drivers walk indexed double sums, while the residuals
//! here rebuild each `C_k(r)` as a Laurent [`TruncatedSeries`] in absolute
//! powers of `r` and push it through generic series products and
//! derivatives. A bug in the index bookkeeping of one path cannot cancel
//! in the other.
//!
//! Residuals are only asserted for powers inside the stored truncation
//! budget; everything above is reported as unchecked, never silently
//! assumed zero.

use crate::coulomb::CoulombPotential;
use crate::energy::EnergySeries;
use crate::error::Error;
use crate::oscillator::OscillatorPotential;
use crate::qn::QuantumNumbers;
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use crate::table::{CoefficientTable, Family};
use crate::{coulomb, oscillator};

/// Power-by-power mismatch of one order of the Riccati hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    order: usize,
    leading_power: i64,
    residual_coefficients: Vec<Rational>,
    all_zero: bool,
    unchecked_from_power: i64,
}

impl ResidualReport {
    fn from_series(order: usize, residual: &TruncatedSeries) -> Self {
        ResidualReport {
            order,
            leading_power: residual.leading_power(),
            residual_coefficients: residual.coeffs().to_vec(),
            all_zero: residual.is_zero_on_window(),
            unchecked_from_power: residual
                .top_power()
                .map_or(residual.leading_power(), |top| top + 1),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Power of `r` the first residual coefficient belongs to.
    pub fn leading_power(&self) -> i64 {
        self.leading_power
    }

    pub fn residual_coefficients(&self) -> &[Rational] {
        &self.residual_coefficients
    }

    pub fn all_zero(&self) -> bool {
        self.all_zero
    }

    /// Powers from here on were outside the truncation budget and are
    /// unchecked.
    pub fn unchecked_from_power(&self) -> i64 {
        self.unchecked_from_power
    }

    /// `(power, coefficient)` pairs of the nonzero residual entries.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.residual_coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (self.leading_power + idx as i64, c))
    }
}

fn require_family(table: &CoefficientTable, family: Family) -> Result<(), Error> {
    if table.family() == family {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "table was computed for the {} family, residual requested for {}",
            table.family().name(),
            family.name()
        )))
    }
}

/// Convolution part `sum_{j=0}^{k} C_j C_{k-j}` of the order-k equation,
/// built from series products only.
fn pairwise_convolution(table: &CoefficientTable, k: usize) -> Result<TruncatedSeries, Error> {
    let rows: Vec<TruncatedSeries> = (0..=k)
        .map(|j| table.row_series(j))
        .collect::<Result<_, _>>()?;
    let mut sum = rows[0].mul(&rows[k]);
    for j in 1..=k {
        sum = sum.add(&rows[j].mul(&rows[k - j]));
    }
    Ok(sum)
}

/// Substitutes the stored coefficients into the order-k equation of the
/// oscillator hierarchy and returns the power-of-r mismatch. Order zero
/// checks `C_0^2 = 2 m V(r)`; higher orders check
/// `C'_{k-1} + sum_j C_j C_{k-j} = -2 m E_k + l(l+1) delta_{k,2} / r^2`.
pub fn oscillator_residual(
    table: &CoefficientTable,
    energies: &EnergySeries,
    pot: &OscillatorPotential,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<ResidualReport, Error> {
    require_family(table, Family::Oscillator)?;
    if k > table.order() {
        return Err(Error::MissingEntry { k, i: 0 });
    }
    let convolution = pairwise_convolution(table, k)?;
    let residual = if k == 0 {
        // 2 m V(r) = m^2 w^2 r^2 + sum_{i>=1} 2 m f_i r^{2i+2}, exact at
        // every power because the coupling list is a finite polynomial.
        let window_len = convolution.len();
        let mut coeffs = vec![Rational::zero(); window_len];
        let m_omega = pot.mass() * pot.omega();
        if !coeffs.is_empty() {
            coeffs[0] = &m_omega * &m_omega;
        }
        let two_m = Rational::from(2) * pot.mass();
        for i in 1..=(window_len.saturating_sub(1)) / 2 {
            coeffs[2 * i] = &two_m * &pot.coupling(i);
        }
        let potential_side = TruncatedSeries::new(2, coeffs);
        convolution.sub(&potential_side)
    } else {
        let derivative = table.row_series(k - 1)?.derivative();
        let mut lhs = derivative.add(&convolution);
        let mut terms = vec![(0, Rational::from(2) * pot.mass() * energies.require(k)?)];
        if k == 2 {
            terms.push((-2, -qn.centrifugal_rational()));
        }
        let rhs_terms = TruncatedSeries::from_terms(lhs.leading_power(), lhs.len(), &terms);
        lhs = lhs.add(&rhs_terms);
        lhs
    };
    Ok(ResidualReport::from_series(k, &residual))
}

/// Same check for the Coulomb hierarchy: order zero is `C_0^2 = -2 m E_0`,
/// order one is `C_0 C_1 = m (V(r) - E_1)`, and higher orders follow the
/// common pattern.
pub fn coulomb_residual(
    table: &CoefficientTable,
    energies: &EnergySeries,
    pot: &CoulombPotential,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<ResidualReport, Error> {
    require_family(table, Family::Coulomb)?;
    if k > table.order() {
        return Err(Error::MissingEntry { k, i: 0 });
    }
    let residual = match k {
        0 => {
            let square = pairwise_convolution(table, 0)?;
            let constant = TruncatedSeries::from_terms(
                square.leading_power(),
                square.len(),
                &[(0, Rational::from(2) * pot.mass() * energies.require(0)?)],
            );
            square.add(&constant)
        }
        1 => {
            // The order-one equation carries a single product C_0 C_1, not
            // the symmetrized j-sum: C_0 C_1 - m V(r) + m E_1 r^0.
            let product = table.row_series(0)?.mul(&table.row_series(1)?);
            let window_len = product.len();
            let mut coeffs = Vec::with_capacity(window_len);
            for i in 0..window_len {
                coeffs.push(pot.mass() * &pot.coefficient(i));
            }
            let potential_side = TruncatedSeries::new(-1, coeffs);
            let energy_term = TruncatedSeries::from_terms(
                product.leading_power(),
                window_len,
                &[(0, pot.mass() * energies.require(1)?)],
            );
            product.sub(&potential_side).add(&energy_term)
        }
        _ => {
            let derivative = table.row_series(k - 1)?.derivative();
            let lhs = derivative.add(&pairwise_convolution(table, k)?);
            let mut terms = vec![(0, Rational::from(2) * pot.mass() * energies.require(k)?)];
            if k == 2 {
                terms.push((-2, -qn.centrifugal_rational()));
            }
            let rhs_terms = TruncatedSeries::from_terms(lhs.leading_power(), lhs.len(), &terms);
            lhs.add(&rhs_terms)
        }
    };
    Ok(ResidualReport::from_series(k, &residual))
}

/// Stored residue coefficient `C^k_{k-1}`; the quantization condition says
/// it equals `N` for k = 1 and `0` for every k >= 2.
pub fn quantization_residue(table: &CoefficientTable, k: usize) -> Result<Rational, Error> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "quantization residue is defined for orders k >= 1".into(),
        ));
    }
    Ok(table.require(k, k - 1)?.clone())
}

/// One closed-form/recursion disagreement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u32,
    pub l: u32,
    pub k: usize,
    pub recursion: Rational,
    pub closed_form: Rational,
}

/// Outcome of sweeping a parameter/quantum-number grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub family: Family,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheck {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `(n, l)` over `{0..=3}^2`, the default verification grid.
pub fn default_grid() -> Vec<QuantumNumbers> {
    let mut grid = Vec::with_capacity(16);
    for n in 0..=3 {
        for l in 0..=3 {
            grid.push(QuantumNumbers::new(n, l));
        }
    }
    grid
}

/// Compares recursion output against the closed forms for every potential,
/// grid point and order `1..=max_order` (oscillator family).
pub fn cross_check_oscillator(
    pots: &[OscillatorPotential],
    grid: &[QuantumNumbers],
    max_order: usize,
) -> Result<CrossCheck, Error> {
    let mut report = CrossCheck {
        family: Family::Oscillator,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    for pot in pots {
        for qn in grid {
            let (energies, _) = oscillator::expand(pot, qn, max_order)?;
            for k in 1..=max_order {
                let printed = oscillator::closed_form(pot, qn, k)?;
                let recursed = energies.require(k)?.clone();
                report.comparisons += 1;
                if printed != recursed {
                    report.mismatches.push(Mismatch {
                        n: qn.n(),
                        l: qn.l(),
                        k,
                        recursion: recursed,
                        closed_form: printed,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Same sweep for the Coulomb family, orders `0..=max_order`.
pub fn cross_check_coulomb(
    pots: &[CoulombPotential],
    grid: &[QuantumNumbers],
    max_order: usize,
) -> Result<CrossCheck, Error> {
    let mut report = CrossCheck {
        family: Family::Coulomb,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    for pot in pots {
        for qn in grid {
            let (energies, _) = coulomb::expand(pot, qn, max_order)?;
            for k in 0..=max_order {
                let printed = coulomb::closed_form(pot, qn, k)?;
                let recursed = energies.require(k)?.clone();
                report.comparisons += 1;
                if printed != recursed {
                    report.mismatches.push(Mismatch {
                        n: qn.n(),
                        l: qn.l(),
                        k,
                        recursion: recursed,
                        closed_form: printed,
                    });
                }
            }
        }
    }
    Ok(report)
}
