//! Hbar-expansion of the spherical anharmonic oscillator.
//!
//! The potential is the even Taylor series
//!
//! ```text
//! V(r) = m w^2 r^2 / 2 + sum_{i>=1} f_i r^{2i+2}
//! ```
//!
//! Writing `C(r) = hbar U'(r)/U(r)` turns the radial Schroedinger equation
//! into a Riccati equation. Expanding `E = sum_{k>=1} E_k hbar^k` and
//! `C = sum_{k>=0} C_k(r) hbar^k` and collecting powers of hbar gives a
//! hierarchy whose order-k member couples `C_k` to all lower orders. About
//! the origin `C_k(r) = r^{1-2k} sum_i C^k_i r^{2i}`, and the residue
//! quantization condition pins the coefficient of `1/r` in every order:
//! `C^k_{k-1} = N delta_{1,k}` with `N = 2n + l + 1` zeros of the wave
//! function pulled into the origin. That single condition handles ground
//! and excited states alike; the energy corrections fall out of the same
//! power balance that enforces it.

use crate::energy::EnergySeries;
use crate::error::Error;
use crate::qn::{eta, QuantumNumbers};
use crate::rational::Rational;
use crate::table::{CoefficientTable, Family};

/// Mass, frequency and anharmonic couplings `f_1..f_F` of the even
/// oscillator potential. Couplings beyond the stored list are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscillatorPotential {
    mass: Rational,
    omega: Rational,
    anharmonic: Vec<Rational>,
}

impl OscillatorPotential {
    /// Requires `m > 0` and `omega > 0`: the zero-order coefficient
    /// `C^0_0 = -m w` divides every recursion step.
    pub fn new(mass: Rational, omega: Rational, anharmonic: Vec<Rational>) -> Result<Self, Error> {
        if !mass.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "oscillator mass must be positive, got {mass}"
            )));
        }
        if !omega.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "oscillator frequency must be positive, got {omega}"
            )));
        }
        Ok(OscillatorPotential {
            mass,
            omega,
            anharmonic,
        })
    }

    pub fn harmonic(mass: Rational, omega: Rational) -> Result<Self, Error> {
        Self::new(mass, omega, Vec::new())
    }

    pub fn mass(&self) -> &Rational {
        &self.mass
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn anharmonic(&self) -> &[Rational] {
        &self.anharmonic
    }

    /// Coupling `f_i` (1-based), zero beyond the stored list.
    pub fn coupling(&self, i: usize) -> Rational {
        if i == 0 {
            return Rational::zero();
        }
        self.anharmonic
            .get(i - 1)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Coefficients `C^0_0 .. C^0_I` of `C_0(r) = -sqrt(2 m V(r))`, the minus
/// branch being forced by the bound-state boundary conditions:
///
/// `C^0_0 = -m w`,
/// `C^0_i = (sum_{p=1}^{i-1} C^0_p C^0_{i-p} - 2 m f_i) / (2 m w)`.
pub fn c0(pot: &OscillatorPotential, max_index: usize) -> Vec<Rational> {
    let mut coeffs = Vec::with_capacity(max_index + 1);
    coeffs.push(-(pot.mass() * pot.omega()));
    let two_m_omega = Rational::from(2) * pot.mass() * pot.omega();
    let two_m = Rational::from(2) * pot.mass();
    for i in 1..=max_index {
        let mut acc = -(&two_m * &pot.coupling(i));
        for p in 1..i {
            acc += &coeffs[p] * &coeffs[i - p];
        }
        coeffs.push(acc / &two_m_omega);
    }
    coeffs
}

/// One step of the coefficient recursion, valid away from the quantization
/// index `i = k - 1`:
///
/// ```text
/// C^k_i = -1/(2 C^0_0) [ (3 - 2k + 2i) C^{k-1}_i
///                        + sum_{j=1}^{k-1} sum_{p=0}^{i} C^j_p C^{k-j}_{i-p}
///                        + 2 sum_{p=1}^{i} C^0_p C^k_{i-p}
///                        - l(l+1) delta_{2,k} delta_{0,i} ]
/// ```
///
/// Every referenced entry must already be present; a miss is a fill-order
/// bug and comes back as [`Error::MissingEntry`].
pub fn coefficient_step(
    table: &CoefficientTable,
    qn: &QuantumNumbers,
    k: usize,
    i: usize,
) -> Result<Rational, Error> {
    debug_assert!(k >= 1 && i != k - 1);
    let derivative_weight = Rational::from(3 - 2 * k as i64 + 2 * i as i64);
    let mut acc = derivative_weight * table.require(k - 1, i)?;
    for j in 1..k {
        for p in 0..=i {
            acc += table.require(j, p)? * table.require(k - j, i - p)?;
        }
    }
    let two = Rational::from(2);
    for p in 1..=i {
        acc += &two * table.require(0, p)? * table.require(k, i - p)?;
    }
    if k == 2 && i == 0 {
        acc -= &qn.centrifugal_rational();
    }
    let c00 = table.require(0, 0)?;
    Ok(-acc / (&two * c00))
}

/// Energy correction extracted at the quantization index:
///
/// `2 m E_k = -C^{k-1}_{k-1} - sum_{j=0}^{k} sum_{p=0}^{k-1} C^j_p C^{k-j}_{k-1-p}`,
///
/// with the entry `C^k_{k-1} = N delta_{1,k}` already in place.
pub fn energy_correction(
    table: &CoefficientTable,
    pot: &OscillatorPotential,
    k: usize,
) -> Result<Rational, Error> {
    debug_assert!(k >= 1);
    let mut acc = table.require(k - 1, k - 1)?.clone();
    for j in 0..=k {
        for p in 0..k {
            acc += table.require(j, p)? * table.require(k - j, k - 1 - p)?;
        }
    }
    Ok(-acc / (Rational::from(2) * pot.mass()))
}

/// Full expansion through order K: fills the table rows `k = 0..=K` over
/// series indices `0..=K-1`, writing `N delta_{1,k}` into slot `(k, k-1)`
/// and reading `E_k` off the same power balance, in that order, so that the
/// quantization entry is in place before the inner loop passes it.
pub fn expand(
    pot: &OscillatorPotential,
    qn: &QuantumNumbers,
    order: usize,
) -> Result<(EnergySeries, CoefficientTable), Error> {
    if order < 1 {
        return Err(Error::InvalidParameter(
            "oscillator expansion order must be at least 1".into(),
        ));
    }
    let max_index = Family::Oscillator.max_index(order);
    let mut table = CoefficientTable::with_capacity(Family::Oscillator, order);
    table.push_row(c0(pot, max_index));

    let zero_count = Rational::from(qn.zeros_oscillator());
    let mut corrections = Vec::with_capacity(order);
    for k in 1..=order {
        table.push_row(Vec::with_capacity(max_index + 1));
        for i in 0..=max_index {
            if i == k - 1 {
                let quantized = if k == 1 {
                    zero_count.clone()
                } else {
                    Rational::zero()
                };
                table.push_entry(quantized);
                corrections.push(energy_correction(&table, pot, k)?);
            } else {
                let value = coefficient_step(&table, qn, k, i)?;
                table.push_entry(value);
            }
        }
    }
    let energies = EnergySeries::new(Family::Oscillator, 1, corrections);
    Ok((energies, table))
}

/// Closed-form corrections `E_1..E_5` in terms of `N = 2n+l+1`,
/// `eta = N(N+1)`, `L = l(l+1)` and the couplings `f_1..f_4`, evaluated
/// exactly. Orders beyond five are not tabulated and are reported as
/// unsupported; the recursion has no such limit.
pub fn closed_form(
    pot: &OscillatorPotential,
    qn: &QuantumNumbers,
    k: usize,
) -> Result<Rational, Error> {
    let n_zero = Rational::from(qn.zeros_oscillator());
    let eta_r = Rational::from(eta(qn.zeros_oscillator()));
    let l_r = qn.centrifugal_rational();
    let m = pot.mass().clone();
    let w = pot.omega().clone();
    let f1 = pot.coupling(1);
    let f2 = pot.coupling(2);
    let f3 = pot.coupling(3);
    let f4 = pot.coupling(4);
    let int = Rational::from;

    let value = match k {
        1 => (int(1) + int(2) * &n_zero) * &w / int(2),
        2 => (int(3) - int(2) * &l_r + int(6) * &eta_r) * &f1 / (int(4) * m.pow(2)? * w.pow(2)?),
        3 => {
            let quadratic = (int(-21) + int(9) * &l_r - int(17) * &eta_r) * &f1 * &f1;
            let linear = &m * (int(15) - int(6) * &l_r + int(10) * &eta_r) * w.pow(2)? * &f2;
            (int(1) + int(2) * &n_zero) * (quadratic + linear) / (int(8) * m.pow(4)? * w.pow(5)?)
        }
        4 => {
            let cubic = (int(333) + int(11) * l_r.pow(2)?
                - int(3) * &l_r * (int(67) + int(86) * &eta_r)
                + int(3) * &eta_r * (int(347) + int(125) * &eta_r))
                * f1.pow(3)?;
            let mixed = int(6)
                * &m
                * (int(60) + int(3) * (&l_r - int(13)) * &l_r + int(175) * &eta_r
                    - int(42) * &l_r * &eta_r
                    + int(55) * eta_r.pow(2)?)
                * w.pow(2)?
                * &f1
                * &f2;
            let cubic_coupling = m.pow(2)?
                * (int(6) * l_r.pow(2)? - int(12) * &l_r * (int(6) + int(5) * &eta_r)
                    + int(35) * (int(3) + int(2) * &eta_r * (int(4) + &eta_r)))
                * w.pow(4)?
                * &f3;
            (cubic - mixed + cubic_coupling) / (int(16) * m.pow(6)? * w.pow(8)?)
        }
        5 => {
            let quartic = (int(30885) + int(909) * l_r.pow(2)?
                - int(27) * &l_r * (int(613) + int(330) * &eta_r)
                + &eta_r * (int(49927) + int(10689) * &eta_r))
                * f1.pow(4)?;
            let sq_mixed = int(4)
                * &m
                * (int(11220) + int(393) * l_r.pow(2)?
                    - int(6) * &l_r * (int(1011) + int(475) * &eta_r)
                    + &eta_r * (int(16342) + int(3129) * &eta_r))
                * w.pow(2)?
                * f1.pow(2)?
                * &f2;
            let f1_f3 = int(16)
                * m.pow(2)?
                * (int(33) * l_r.pow(2)? - &l_r * (int(501) + int(190) * &eta_r)
                    + int(63) * (int(15) + &eta_r * (int(19) + int(3) * &eta_r)))
                * w.pow(4)?
                * &f1
                * &f3;
            let f2_sq = int(2)
                * m.pow(2)?
                * (int(3495)
                    + int(138) * l_r.pow(2)?
                    + int(4538) * &eta_r
                    + int(786) * eta_r.pow(2)?
                    - int(30) * &l_r * (int(63) + int(26) * &eta_r))
                * w.pow(4)?
                * f2.pow(2)?;
            let f4_term = int(4)
                * m.pow(3)?
                * (int(30) * l_r.pow(2)? - int(20) * &l_r * (int(24) + int(7) * &eta_r)
                    + int(63) * (int(15) + int(2) * &eta_r * (int(8) + &eta_r)))
                * w.pow(6)?
                * &f4;
            -(int(1) + int(2) * &n_zero) * (quartic - sq_mixed + f1_f3 + f2_sq - f4_term)
                / (int(128) * m.pow(8)? * w.pow(11)?)
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

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn quartic(lambda: &str) -> OscillatorPotential {
        OscillatorPotential::new(Rational::one(), Rational::one(), vec![rat(lambda)]).unwrap()
    }

    fn unit_harmonic() -> OscillatorPotential {
        OscillatorPotential::harmonic(Rational::one(), Rational::one()).unwrap()
    }

    #[test]
    fn rejects_nonpositive_mass_or_frequency() {
        assert!(OscillatorPotential::new(rat("0"), rat("1"), vec![]).is_err());
        assert!(OscillatorPotential::new(rat("1"), rat("-2"), vec![]).is_err());
    }

    #[test]
    fn harmonic_c0_is_linear() {
        let coeffs = c0(&unit_harmonic(), 3);
        assert_eq!(coeffs, vec![rat("-1"), rat("0"), rat("0"), rat("0")]);
    }

    // Oracle for the zero-order coefficients: binomial expansion of
    // -m w r (1 + 2/(m w^2) sum f_i r^{2i})^{1/2}, using the generalized
    // binomial coefficients binom(1/2, j) -- an expansion route that never
    // touches the c0 recursion.
    fn c0_binomial_oracle(pot: &OscillatorPotential, max_index: usize) -> Vec<Rational> {
        let half = rat("1/2");
        // x(r) = 2/(m w^2) * sum_{i>=1} f_i r^{2i}, as index-space coeffs
        let mut x = vec![Rational::zero(); max_index + 1];
        let scale = rat("2") / (pot.mass() * pot.omega() * pot.omega());
        for (i, slot) in x.iter_mut().enumerate().skip(1) {
            *slot = &scale * &pot.coupling(i);
        }
        // sqrt(1+x) = sum_j binom(1/2, j) x^j
        let mut sqrt_series = vec![Rational::zero(); max_index + 1];
        sqrt_series[0] = Rational::one();
        let mut x_power = vec![Rational::zero(); max_index + 1];
        x_power[0] = Rational::one();
        let mut binom = Rational::one();
        for j in 1..=max_index {
            // binom(1/2, j) = binom(1/2, j-1) * (1/2 - (j-1)) / j
            binom = binom * (&half - &Rational::from(j as i64 - 1)) / Rational::from(j as i64);
            // x_power = x_power * x (truncated convolution)
            let mut next = vec![Rational::zero(); max_index + 1];
            for a in 0..=max_index {
                if x_power[a].is_zero() {
                    continue;
                }
                for (b, coeff) in x.iter().enumerate().take(max_index - a + 1) {
                    if !coeff.is_zero() {
                        let term = &x_power[a] * coeff;
                        next[a + b] += term;
                    }
                }
            }
            x_power = next;
            for i in 0..=max_index {
                let term = &binom * &x_power[i];
                sqrt_series[i] += term;
            }
        }
        let minus_m_omega = -(pot.mass() * pot.omega());
        sqrt_series.iter().map(|c| &minus_m_omega * c).collect()
    }

    #[test]
    fn c0_matches_the_binomial_square_root() {
        let pot =
            OscillatorPotential::new(Rational::one(), Rational::one(), vec![rat("1/10")]).unwrap();
        let expected = c0_binomial_oracle(&pot, 2);
        // Frozen from the oracle: the r^2 and r^4 coefficients.
        assert_eq!(expected[1], rat("-1/10"));
        assert_eq!(expected[2], rat("1/200"));
        assert_eq!(c0(&pot, 2), expected);

        let rich = OscillatorPotential::new(
            rat("3/2"),
            rat("2/3"),
            vec![rat("1/7"), rat("-2/5"), rat("3/11")],
        )
        .unwrap();
        assert_eq!(c0(&rich, 8), c0_binomial_oracle(&rich, 8));
    }

    #[test]
    fn harmonic_first_order_row_vanishes_beyond_the_pole() {
        // Exact ground-state logarithmic derivative of the harmonic
        // oscillator is C(r) = hbar(l+1)/r - m w r: every C^1_i with i >= 1
        // is zero, as is every higher-order row.
        let qn = QuantumNumbers::new(0, 0);
        let (_, table) = expand(&unit_harmonic(), &qn, 6).unwrap();
        for i in 1..=table.max_index() {
            assert_eq!(table.entry(1, i), Some(&Rational::zero()), "C^1_{i}");
        }
        for k in 2..=6 {
            for i in 0..=table.max_index() {
                assert_eq!(table.entry(k, i), Some(&Rational::zero()), "C^{k}_{i}");
            }
        }
    }

    #[test]
    fn step_at_k2_i0_is_the_direct_substitution() {
        let pot = quartic("1/10");
        let qn = QuantumNumbers::new(0, 0);
        let (_, table) = expand(&pot, &qn, 3).unwrap();
        let c00 = table.entry(0, 0).unwrap();
        let c10 = table.entry(1, 0).unwrap();
        let expected = -((rat("-1") * c10) + c10 * c10) / (rat("2") * c00);
        assert_eq!(coefficient_step(&table, &qn, 2, 0).unwrap(), expected);
        assert_eq!(table.entry(2, 0), Some(&expected));
    }

    #[test]
    fn harmonic_energies_terminate_at_first_order() {
        for (n, l, expected) in [(0u32, 0u32, "3/2"), (2, 1, "13/2"), (3, 3, "21/2")] {
            let qn = QuantumNumbers::new(n, l);
            let (energies, _) = expand(&unit_harmonic(), &qn, 10).unwrap();
            assert_eq!(energies.require(1).unwrap(), &rat(expected));
            for k in 2..=10 {
                assert!(energies.require(k).unwrap().is_zero(), "E_{k} not zero");
            }
        }
    }

    #[test]
    fn explicit_zero_coupling_equals_absent_coupling() {
        let padded =
            OscillatorPotential::new(Rational::one(), rat("2"), vec![Rational::zero()]).unwrap();
        let bare = OscillatorPotential::harmonic(Rational::one(), rat("2")).unwrap();
        let qn = QuantumNumbers::new(1, 0);
        assert_eq!(
            expand(&padded, &qn, 3).unwrap(),
            expand(&bare, &qn, 3).unwrap()
        );
    }

    #[test]
    fn quartic_ground_state_corrections() {
        let qn = QuantumNumbers::new(0, 0);
        let (energies, _) = expand(&quartic("1"), &qn, 5).unwrap();
        // N = 1, eta = 2, L = 0 in the printed forms.
        assert_eq!(energies.require(1).unwrap(), &rat("3/2"));
        assert_eq!(energies.require(2).unwrap(), &rat("15/4"));
        assert_eq!(energies.require(3).unwrap(), &rat("-165/8"));
        assert_eq!(energies.require(4).unwrap(), &rat("3915/16"));
        assert_eq!(energies.require(5).unwrap(), &rat("-520485/128"));
    }

    #[test]
    fn quartic_coupling_scales_each_order() {
        let lam = rat("1/10");
        let qn = QuantumNumbers::new(1, 1);
        let (energies, _) = expand(&quartic("1/10"), &qn, 5).unwrap();
        let (unit, _) = expand(&quartic("1"), &qn, 5).unwrap();
        for k in 2..=5 {
            let expected = unit.require(k).unwrap() * &lam.pow(k as i64 - 1).unwrap();
            assert_eq!(energies.require(k).unwrap(), &expected, "E_{k}");
        }
    }

    #[test]
    fn closed_form_first_order_is_the_harmonic_level() {
        for (n, l) in [(0u32, 0u32), (1, 0), (2, 3)] {
            let qn = QuantumNumbers::new(n, l);
            let expected = rat(&format!("{}/2", 2 * qn.zeros_oscillator() + 1));
            assert_eq!(closed_form(&unit_harmonic(), &qn, 1).unwrap(), expected);
        }
    }

    #[test]
    fn closed_form_second_order_vanishes_without_f1() {
        let pot =
            OscillatorPotential::new(Rational::one(), rat("3"), vec![rat("0"), rat("5")]).unwrap();
        assert!(closed_form(&pot, &QuantumNumbers::new(2, 1), 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn closed_form_fourth_order_example() {
        // m = w = 1, f = (1, 0, 0), n = l = 0: (333 + 3*2*(347 + 250))/16.
        let pot =
            OscillatorPotential::new(Rational::one(), Rational::one(), vec![rat("1")]).unwrap();
        let qn = QuantumNumbers::new(0, 0);
        let value = closed_form(&pot, &qn, 4).unwrap();
        assert_eq!(value, rat("3915/16"));
        let (energies, _) = expand(&pot, &qn, 4).unwrap();
        assert_eq!(energies.require(4).unwrap(), &value);
    }

    #[test]
    fn closed_form_beyond_fifth_order_is_unsupported() {
        assert!(matches!(
            closed_form(&unit_harmonic(), &QuantumNumbers::new(0, 0), 6),
            Err(Error::UnsupportedOrder {
                requested: 6,
                max: 5
            })
        ));
    }

    #[test]
    fn recursion_matches_closed_forms_on_a_dense_potential() {
        let pot = OscillatorPotential::new(
            rat("2/3"),
            rat("5/4"),
            vec![rat("1/3"), rat("-1/5"), rat("2/7"), rat("1/2")],
        )
        .unwrap();
        for n in 0..=3 {
            for l in 0..=3 {
                let qn = QuantumNumbers::new(n, l);
                let (energies, _) = expand(&pot, &qn, 5).unwrap();
                for k in 1..=5 {
                    assert_eq!(
                        energies.require(k).unwrap(),
                        &closed_form(&pot, &qn, k).unwrap(),
                        "E_{k} at n={n}, l={l}"
                    );
                }
            }
        }
    }
}
