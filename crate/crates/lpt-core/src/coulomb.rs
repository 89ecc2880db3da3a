//! Hbar-expansion of the screened Coulomb family.
//!
//! The potential is `V(r) = (1/r) sum_{i>=0} V_i r^i` with an attractive
//! core `V_0 < 0`; the screening parameter is not singled out but absorbed
//! into the Taylor coefficients. After the scale transformation that pairs
//! powers of the screening with powers of hbar squared, the expansions read
//! `E = hbar^-2 sum_k E_k hbar^{2k}` and `C = hbar^-1 sum_k C_k(r) hbar^k`.
//!
//! `C_0` is a constant, `C_k(r) = r^-k sum_i C^k_i r^i` has a pole of order
//! k, and the residue quantization condition is again `C^k_{k-1} =
//! N delta_{1,k}`, now with `N = n + l + 1`: the nodes enter the origin
//! from the positive half-axis only. Unlike the oscillator, the order-k
//! power balance at series index `i = k` couples two unknowns, `C^k_k` and
//! `E_k`; the balance one order higher at the same index, with its residue
//! pinned to zero by quantization, closes the system and fixes `C^k_k`
//! from entries of order at most k. `E_k` then falls out at `i = k`.

use crate::energy::EnergySeries;
use crate::error::Error;
use crate::qn::QuantumNumbers;
use crate::rational::Rational;
use crate::table::{CoefficientTable, Family};

/// Mass and Taylor coefficients `V_0..V_I` of `V(r) = (1/r) sum V_i r^i`.
/// Coefficients beyond the stored list are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoulombPotential {
    mass: Rational,
    v: Vec<Rational>,
}

impl CoulombPotential {
    pub fn new(mass: Rational, v: Vec<Rational>) -> Result<Self, Error> {
        if !mass.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {mass}"
            )));
        }
        Ok(CoulombPotential { mass, v })
    }

    /// Pure Coulomb potential `V(r) = V_0 / r`.
    pub fn pure_coulomb(mass: Rational, v0: Rational) -> Result<Self, Error> {
        Self::new(mass, vec![v0])
    }

    pub fn mass(&self) -> &Rational {
        &self.mass
    }

    /// Coefficient `V_i`, zero beyond the stored list.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.v.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.v
    }

    pub fn with_mass(self, mass: Rational) -> Result<Self, Error> {
        Self::new(mass, self.v)
    }

    fn attractive_v0(&self) -> Result<Rational, Error> {
        let v0 = self.coefficient(0);
        if v0.is_negative() {
            Ok(v0)
        } else {
            Err(Error::NoBoundState { v0: v0.to_string() })
        }
    }
}

/// Debye (static screened Coulomb) potential `V(r) = -(alpha/r) exp(-kappa r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DebyeSpec {
    alpha: Rational,
    kappa: Rational,
}

impl DebyeSpec {
    pub fn new(alpha: Rational, kappa: Rational) -> Result<Self, Error> {
        if !alpha.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "Debye coupling alpha must be positive, got {alpha}"
            )));
        }
        if kappa.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "Debye screening kappa must be nonnegative, got {kappa}"
            )));
        }
        Ok(DebyeSpec { alpha, kappa })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }
}

/// Taylor coefficients `V_i = -alpha (-kappa)^i / i!` for `i = 0..=max_index`,
/// in Coulomb units `m = 1`; use [`CoulombPotential::with_mass`] for other
/// masses.
pub fn debye_taylor(spec: &DebyeSpec, max_index: usize) -> CoulombPotential {
    let mut coeffs = Vec::with_capacity(max_index + 1);
    let mut term = -spec.alpha().clone();
    coeffs.push(term.clone());
    for i in 1..=max_index {
        term = term * -spec.kappa() / Rational::from(i as u64);
        coeffs.push(term.clone());
    }
    CoulombPotential {
        mass: Rational::one(),
        v: coeffs,
    }
}

/// Zero-order constant `C^0_0 = -sqrt(-2 m E_0)` with
/// `E_0 = -m V_0^2 / (2 N^2)`; rational because the radicand is the perfect
/// square `(m V_0 / N)^2`. Every higher `C^0_i` vanishes.
pub fn c0(pot: &CoulombPotential, qn: &QuantumNumbers) -> Result<Rational, Error> {
    pot.attractive_v0()?;
    let e0 = ground_energy(pot, qn)?;
    let radicand = Rational::from(-2) * pot.mass() * e0;
    Ok(-radicand.sqrt_exact()?)
}

fn ground_energy(pot: &CoulombPotential, qn: &QuantumNumbers) -> Result<Rational, Error> {
    let v0 = pot.attractive_v0()?;
    let n_sq = Rational::from(qn.zeros_coulomb()).pow(2)?;
    Ok(-(pot.mass() * &v0 * &v0) / (Rational::from(2) * n_sq))
}

/// One step of the coefficient recursion, valid away from `i = k`:
///
/// ```text
/// C^1_i = (m / C^0_0) V_i
/// C^k_i = -1/(2 C^0_0) [ (i - k + 1) C^{k-1}_i
///                        + sum_{j=1}^{k-1} sum_{p=0}^{i} C^j_p C^{k-j}_{i-p}
///                        - l(l+1) delta_{i,0} delta_{k,2} ],  k > 1
/// ```
///
/// The `E_k delta_{i,k}` terms of the full power balance cannot fire here
/// because `i != k`.
pub fn coefficient_step(
    table: &CoefficientTable,
    pot: &CoulombPotential,
    qn: &QuantumNumbers,
    k: usize,
    i: usize,
) -> Result<Rational, Error> {
    debug_assert!(k >= 1 && i != k);
    let c00 = table.require(0, 0)?;
    if k == 1 {
        return (pot.mass() * &pot.coefficient(i)).checked_div(c00);
    }
    let derivative_weight = Rational::from(i as i64 - k as i64 + 1);
    let mut acc = derivative_weight * table.require(k - 1, i)?;
    for j in 1..k {
        for p in 0..=i {
            acc += table.require(j, p)? * table.require(k - j, i - p)?;
        }
    }
    if k == 2 && i == 0 {
        acc -= &qn.centrifugal_rational();
    }
    Ok(-acc / (Rational::from(2) * c00))
}

/// Diagonal coefficient `C^k_k`, fixed by the quantization condition one
/// order up: the order-(k+1) power balance at series index k has a
/// vanishing derivative weight and its `C^{k+1}_k` residue pinned to zero,
/// leaving
///
/// `2 N C^k_k = -sum_{j=1}^{k} sum_{p=0}^{k} C^j_p C^{k+1-j}_{k-p}`
///
/// with the two `C^k_k` terms of the double sum moved to the left.
pub fn diagonal_entry(
    table: &CoefficientTable,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<Rational, Error> {
    debug_assert!(k >= 1);
    let mut acc = Rational::zero();
    for j in 1..=k {
        for p in 0..=k {
            if (j == 1 && p == 0) || (j == k && p == k) {
                continue;
            }
            acc += table.require(j, p)? * table.require(k + 1 - j, k - p)?;
        }
    }
    let two_n = Rational::from(2 * qn.zeros_coulomb());
    Ok(-acc / two_n)
}

/// Energy correction at series index `i = k`:
///
/// `E_0 = -m V_0^2 / (2 N^2)`, `E_1 = V_1 - C^0_0 C^1_1 / m`, and for k > 1
///
/// `E_k = -1/(2m) [ C^{k-1}_k + sum_{j=1}^{k-1} sum_{p=0}^{k} C^j_p C^{k-j}_{k-p} + 2 C^0_0 C^k_k ]`.
pub fn energy_correction(
    table: &CoefficientTable,
    pot: &CoulombPotential,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<Rational, Error> {
    match k {
        0 => ground_energy(pot, qn),
        1 => {
            let c00 = table.require(0, 0)?;
            let c11 = table.require(1, 1)?;
            Ok(pot.coefficient(1) - c00 * c11 / pot.mass())
        }
        _ => {
            let mut acc = table.require(k - 1, k)?.clone();
            for j in 1..k {
                for p in 0..=k {
                    acc += table.require(j, p)? * table.require(k - j, k - p)?;
                }
            }
            acc += Rational::from(2) * table.require(0, 0)? * table.require(k, k)?;
            Ok(-acc / (Rational::from(2) * pot.mass()))
        }
    }
}

/// Full expansion through order K: fills `C^k_i` for `k <= K`, `i <= K`
/// and emits `E_0..E_K`. Within a row the off-diagonal entries come
/// straight from the power balance (they depend only on lower rows), the
/// diagonal is closed by the next order's quantization residue, and the
/// energy follows; the quantization entries `C^k_{k-1} = N delta_{1,k}`
/// are produced, not imposed, which keeps them available as a consistency
/// check.
pub fn expand(
    pot: &CoulombPotential,
    qn: &QuantumNumbers,
    order: usize,
) -> Result<(EnergySeries, CoefficientTable), Error> {
    let max_index = Family::Coulomb.max_index(order);
    let mut table = CoefficientTable::with_capacity(Family::Coulomb, order);
    let mut row0 = vec![Rational::zero(); max_index + 1];
    row0[0] = c0(pot, qn)?;
    table.push_row(row0);

    let mut corrections = Vec::with_capacity(order + 1);
    corrections.push(ground_energy(pot, qn)?);
    for k in 1..=order {
        table.push_row(Vec::with_capacity(max_index + 1));
        for i in 0..k {
            let value = coefficient_step(&table, pot, qn, k, i)?;
            table.push_entry(value);
        }
        let diagonal = diagonal_entry(&table, qn, k)?;
        table.push_entry(diagonal);
        for i in (k + 1)..=max_index {
            let value = coefficient_step(&table, pot, qn, k, i)?;
            table.push_entry(value);
        }
        corrections.push(energy_correction(&table, pot, qn, k)?);
    }
    let energies = EnergySeries::new(Family::Coulomb, 0, corrections);
    Ok((energies, table))
}

/// Closed-form corrections `E_0..E_5` in terms of `N = n+l+1`, `L = l(l+1)`
/// and the Taylor coefficients, evaluated exactly. Orders beyond five are
/// unsupported here; the recursion has no such limit.
pub fn closed_form(
    pot: &CoulombPotential,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<Rational, Error> {
    let v0 = pot.attractive_v0()?;
    let m = pot.mass().clone();
    let n_sq = Rational::from(qn.zeros_coulomb()).pow(2)?;
    let l_r = qn.centrifugal_rational();
    let int = Rational::from;

    let value = match k {
        0 => ground_energy(pot, qn)?,
        1 => pot.coefficient(1),
        2 => (&l_r - int(3) * &n_sq) * pot.coefficient(2) / (int(2) * &m * &v0),
        3 => {
            &n_sq * (int(1) - int(3) * &l_r + int(5) * &n_sq) * pot.coefficient(3)
                / (int(2) * m.pow(2)? * v0.pow(2)?)
        }
        4 => {
            let v2_sq_weight = int(3) * l_r.pow(2)? - int(5) * &n_sq - int(7) * n_sq.pow(2)?;
            let v4_weight = int(3) * &l_r * (int(2) - &l_r)
                - int(5) * &n_sq * (int(5) - int(6) * &l_r)
                - int(35) * n_sq.pow(2)?;
            &n_sq
                * (v2_sq_weight * pot.coefficient(2).pow(2)? + v4_weight * &v0 * pot.coefficient(4))
                / (int(8) * m.pow(3)? * v0.pow(4)?)
        }
        5 => {
            let v2_v3_weight = int(-5) * &l_r * (int(2) + int(3) * &l_r)
                + int(7) * &n_sq * (int(9) - int(2) * &l_r)
                + int(45) * n_sq.pow(2)?;
            let v5_weight = int(12) - int(50) * &l_r
                + int(15) * l_r.pow(2)?
                + int(35) * &n_sq * (int(3) - int(2) * &l_r)
                + int(63) * n_sq.pow(2)?;
            n_sq.pow(2)?
                * (v2_v3_weight * pot.coefficient(2) * pot.coefficient(3)
                    + v5_weight * &v0 * pot.coefficient(5))
                / (int(8) * m.pow(4)? * v0.pow(5)?)
        }
        _ => {
            return Err(Error::UnsupportedOrder {
                requested: k,
                max: 5,
            })
        }
    };
    Ok(value)
}
