//! Acceptance suite: every release gate in one place, one pass/fail line
//! per criterion. Reference strings are the ten-digit (column 1) and
//! eleven-digit (column 3) binding-energy entries of the published Debye
//! table this project reproduces, in Coulomb units hbar = m = alpha = 1.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lpt_core::coulomb::{self, CoulombPotential, DebyeSpec};
use lpt_core::oracle::{self, RadialProblem, SolverConfig};
use lpt_core::oscillator::{self, OscillatorPotential};
use lpt_core::verify;
use lpt_core::{QuantumNumbers, Rational};

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn run_criterion(name: &str, limit: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let passed = outcome.is_ok() && elapsed <= limit;
    println!(
        "acceptance {name}: {} in {:.2?} (limit {:.0?})",
        if passed { "PASS" } else { "FAIL" },
        elapsed,
        limit,
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    assert!(
        elapsed <= limit,
        "{name} exceeded its runtime limit: {elapsed:.2?} > {limit:.0?}"
    );
}

const TABLE_ORDERS: [usize; 10] = [0, 1, 2, 3, 4, 5, 10, 15, 20, 25];

const COLUMN_1: [&str; 10] = [
    "0.5000000000",
    "0.3000000000",
    "0.3300000000",
    "0.3260000000",
    "0.3271000000",
    "0.3266800000",
    "0.3268179839",
    "0.3268059572",
    "0.3268100537",
    "0.3268067333",
];

const COLUMN_2: [&str; 10] = [
    "0.1250000000",
    "0.0750000000",
    "0.0825000000",
    "0.0816250000",
    "0.0818140625",
    "0.0817559375",
    "0.0817715528",
    "0.0817711705",
    "0.0817711991",
    "0.0817711951",
];

const COLUMN_3: [&str; 10] = [
    "0.05555555556",
    "0.03555555556",
    "0.03805555556",
    "0.03781555556",
    "0.03786145556",
    "0.03784969436",
    "0.03785241171",
    "0.03785238868",
    "0.03785238922",
    "0.03785238920",
];

fn debye_binding_sums(kappa: &str, n: u32, l: u32, digits: usize) -> Vec<String> {
    let spec = DebyeSpec::new(Rational::one(), rat(kappa)).unwrap();
    let order = *TABLE_ORDERS.last().unwrap();
    let pot = coulomb::debye_taylor(&spec, order + 1);
    let qn = QuantumNumbers::new(n, l);
    let (energies, _) = coulomb::expand(&pot, &qn, order).unwrap();
    TABLE_ORDERS
        .iter()
        .map(|&k| {
            energies
                .binding_partial_sum(k, &Rational::one())
                .unwrap()
                .to_decimal(digits)
        })
        .collect()
}

#[test]
fn criterion_1_reference_table_column_1() {
    run_criterion(
        "1 (table column n=0 l=0 kappa=0.2, 10 digits)",
        Duration::from_secs(5),
        || {
            let rendered = debye_binding_sums("1/5", 0, 0, 10);
            assert_eq!(rendered, COLUMN_1);
        },
    );
}

#[test]
fn criterion_2_reference_table_column_3() {
    run_criterion(
        "2 (table column n=1 l=1 kappa=0.02, 11 digits)",
        Duration::from_secs(5),
        || {
            let rendered = debye_binding_sums("1/50", 1, 1, 11);
            assert_eq!(rendered, COLUMN_3);
        },
    );
}

#[test]
fn criterion_3_column_2_screening_diagnosis() {
    run_criterion(
        "3 (column 2 header reads kappa=0.04, rows are kappa=0.05)",
        Duration::from_secs(10),
        || {
            // At the header's kappa = 0.04 the first-order row disagrees:
            // -E at K=1 is E_0 sign-flipped minus alpha*kappa = 0.125 - 0.04.
            let at_header_kappa = debye_binding_sums("1/25", 1, 0, 10);
            assert_eq!(at_header_kappa[1], "0.0850000000");
            assert_ne!(at_header_kappa[1], COLUMN_2[1]);
            // At kappa = 0.05 the whole printed column reproduces exactly,
            // so column 2 is excluded from exact-match gating and flagged.
            let at_consistent_kappa = debye_binding_sums("1/20", 1, 0, 10);
            assert_eq!(at_consistent_kappa[1], "0.0750000000");
            assert_eq!(at_consistent_kappa, COLUMN_2);
        },
    );
}

#[test]
fn criterion_4_oracle_agreement() {
    run_criterion(
        "4a (numeric eigenvalue, column 1)",
        Duration::from_secs(30),
        || {
            let problem = RadialProblem::debye(1.0, 0.2, 0, 0).unwrap();
            let config = SolverConfig::default_for(&problem);
            let energy = oracle::solve_eigenvalue(&problem, &config).unwrap();
            assert!((energy - (-0.3268085112)).abs() < 1e-8, "got {energy:.10}");
        },
    );
    run_criterion(
        "4b (numeric eigenvalue, column 3)",
        Duration::from_secs(30),
        || {
            let problem = RadialProblem::debye(1.0, 0.02, 1, 1).unwrap();
            let config = SolverConfig::default_for(&problem);
            let energy = oracle::solve_eigenvalue(&problem, &config).unwrap();
            assert!((energy - (-0.03785238920)).abs() < 1e-8, "got {energy:.11}");
        },
    );
}

fn small_rational(rng: &mut StdRng, nonzero: bool, positive: bool) -> Rational {
    loop {
        let numer: i64 = rng.random_range(-12..=12);
        let denom: i64 = rng.random_range(1..=12);
        let value = Rational::ratio(if positive { numer.abs() } else { numer }, denom);
        if !nonzero || !value.is_zero() {
            return value;
        }
    }
}

fn positive_rational(rng: &mut StdRng) -> Rational {
    loop {
        let value = small_rational(rng, true, true);
        if value.is_positive() {
            return value;
        }
    }
}

#[test]
fn criterion_5_oscillator_closed_form_equivalence() {
    run_criterion(
        "5 (oscillator recursion == closed forms, exact)",
        Duration::from_secs(60),
        || {
            let mut rng = StdRng::seed_from_u64(0x05c1);
            for _ in 0..5 {
                let pot = OscillatorPotential::new(
                    positive_rational(&mut rng),
                    positive_rational(&mut rng),
                    (0..4)
                        .map(|_| small_rational(&mut rng, true, false))
                        .collect(),
                )
                .unwrap();
                for n in 0..=3 {
                    for l in 0..=3 {
                        let qn = QuantumNumbers::new(n, l);
                        let (energies, _) = oscillator::expand(&pot, &qn, 5).unwrap();
                        for k in 1..=5 {
                            assert_eq!(
                                energies.require(k).unwrap(),
                                &oscillator::closed_form(&pot, &qn, k).unwrap(),
                                "E_{k} at n={n}, l={l}, pot={pot:?}"
                            );
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_6_coulomb_closed_form_equivalence() {
    run_criterion(
        "6 (Coulomb recursion == closed forms, exact)",
        Duration::from_secs(60),
        || {
            let mut rng = StdRng::seed_from_u64(0xc001);
            for _ in 0..5 {
                let mut coefficients = vec![-positive_rational(&mut rng)];
                coefficients.extend((0..5).map(|_| small_rational(&mut rng, true, false)));
                let pot = CoulombPotential::new(positive_rational(&mut rng), coefficients).unwrap();
                for n in 0..=3 {
                    for l in 0..=3 {
                        let qn = QuantumNumbers::new(n, l);
                        let (energies, _) = coulomb::expand(&pot, &qn, 5).unwrap();
                        for k in 0..=5 {
                            assert_eq!(
                                energies.require(k).unwrap(),
                                &coulomb::closed_form(&pot, &qn, k).unwrap(),
                                "E_{k} at n={n}, l={l}, pot={pot:?}"
                            );
                        }
                    }
                }
            }
        },
    );
}

/// Fourth-order Debye coefficient as printed in the specialized closed
/// form, with its `+77 N^4` term. The general fourth-order formula, the
/// recursion and the reference table all imply `-77 N^4`; this version
/// exists solely so the disagreement is pinned by a test.
fn printed_debye_e4(alpha: &Rational, kappa: &Rational, qn: &QuantumNumbers) -> Rational {
    let n_sq = Rational::from(qn.zeros_coulomb()).pow(2).unwrap();
    let l_r = qn.centrifugal_rational();
    let weight = Rational::from(3) * &l_r * (Rational::from(2) + Rational::from(5) * &l_r)
        - Rational::from(5) * (Rational::from(11) - Rational::from(6) * &l_r) * &n_sq
        + Rational::from(77) * n_sq.pow(2).unwrap();
    &n_sq * weight * kappa.pow(4).unwrap() / (Rational::from(192) * alpha.pow(2).unwrap())
}

#[test]
fn criterion_7_debye_fourth_order_consistency() {
    run_criterion(
        "7 (Debye E_4: recursion == general closed form, printed special form flagged)",
        Duration::from_secs(30),
        || {
            let cases = [
                ("1/5", 0u32, 0u32, 10usize, COLUMN_1[4]),
                ("1/50", 1, 1, 11, COLUMN_3[4]),
            ];
            for (kappa, n, l, digits, table_row_4) in cases {
                let spec = DebyeSpec::new(Rational::one(), rat(kappa)).unwrap();
                let pot = coulomb::debye_taylor(&spec, 6);
                let qn = QuantumNumbers::new(n, l);
                let (energies, _) = coulomb::expand(&pot, &qn, 4).unwrap();
                let recursion_e4 = energies.require(4).unwrap();

                // The recursion agrees exactly with the general closed form
                // evaluated on the Debye Taylor coefficients...
                let general = coulomb::closed_form(&pot, &qn, 4).unwrap();
                assert_eq!(recursion_e4, &general);

                // ...and reproduces the table's K=4 entry...
                let partial = energies
                    .binding_partial_sum(4, &Rational::one())
                    .unwrap()
                    .to_decimal(digits);
                assert_eq!(partial, table_row_4);

                // ...while the printed Debye-specific formula does not.
                let printed = printed_debye_e4(&Rational::one(), &rat(kappa), &qn);
                assert_ne!(
                    recursion_e4, &printed,
                    "printed special form unexpectedly agrees at kappa={kappa}, n={n}, l={l}"
                );
            }
        },
    );
}

#[test]
fn criterion_8_exact_degenerations() {
    run_criterion(
        "8 (harmonic and pure-Coulomb limits terminate exactly)",
        Duration::from_secs(60),
        || {
            let mass = rat("3/2");
            let omega = rat("5/7");
            let harmonic = OscillatorPotential::harmonic(mass.clone(), omega.clone()).unwrap();
            let v0 = rat("-4/3");
            let coulomb_mass = rat("2");
            let pure = CoulombPotential::pure_coulomb(coulomb_mass.clone(), v0.clone()).unwrap();
            for n in 0..=3u32 {
                for l in 0..=3u32 {
                    let qn = QuantumNumbers::new(n, l);

                    let (energies, _) = oscillator::expand(&harmonic, &qn, 20).unwrap();
                    let level = Rational::ratio((4 * n + 2 * l + 3) as i64, 2) * &omega;
                    assert_eq!(energies.require(1).unwrap(), &level, "n={n}, l={l}");
                    for k in 2..=20 {
                        assert!(energies.require(k).unwrap().is_zero(), "E_{k} n={n} l={l}");
                    }

                    let (energies, _) = coulomb::expand(&pure, &qn, 20).unwrap();
                    let n_sq = Rational::from(qn.zeros_coulomb()).pow(2).unwrap();
                    let ground = -(&coulomb_mass * &v0 * &v0) / (Rational::from(2) * n_sq);
                    assert_eq!(energies.require(0).unwrap(), &ground, "n={n}, l={l}");
                    for k in 1..=20 {
                        assert!(energies.require(k).unwrap().is_zero(), "E_{k} n={n} l={l}");
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_9_property_suites() {
    run_criterion(
        "9 (residuals through k=15, quantization residues, corruption sensitivity)",
        Duration::from_secs(120),
        || {
            let mut rng = StdRng::seed_from_u64(0x9999);

            for set in 0..10 {
                let qn = QuantumNumbers::new(rng.random_range(0..=3), rng.random_range(0..=3));
                let coupling_count = rng.random_range(1..=4);
                let pot = OscillatorPotential::new(
                    positive_rational(&mut rng),
                    positive_rational(&mut rng),
                    (0..coupling_count)
                        .map(|_| small_rational(&mut rng, true, false))
                        .collect(),
                )
                .unwrap();
                let (energies, table) = oscillator::expand(&pot, &qn, 15).unwrap();
                for k in 0..=15 {
                    let report =
                        verify::oscillator_residual(&table, &energies, &pot, &qn, k).unwrap();
                    assert!(report.all_zero(), "oscillator set {set}, order {k}");
                }
                for k in 1..=15 {
                    let expected = if k == 1 {
                        Rational::from(qn.zeros_oscillator())
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(
                        verify::quantization_residue(&table, k).unwrap(),
                        expected,
                        "oscillator set {set}, order {k}"
                    );
                }
            }

            for set in 0..10 {
                let qn = QuantumNumbers::new(rng.random_range(0..=3), rng.random_range(0..=3));
                let mut coefficients = vec![-positive_rational(&mut rng)];
                coefficients.extend((0..5).map(|_| small_rational(&mut rng, false, false)));
                let pot = CoulombPotential::new(positive_rational(&mut rng), coefficients).unwrap();
                let (energies, table) = coulomb::expand(&pot, &qn, 15).unwrap();
                for k in 0..=15 {
                    let report = verify::coulomb_residual(&table, &energies, &pot, &qn, k).unwrap();
                    assert!(report.all_zero(), "coulomb set {set}, order {k}");
                }
                for k in 1..=15 {
                    let expected = if k == 1 {
                        Rational::from(qn.zeros_coulomb())
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(
                        verify::quantization_residue(&table, k).unwrap(),
                        expected,
                        "coulomb set {set}, order {k}"
                    );
                }
            }

            // Corruption sensitivity: a perturbed entry must break at least
            // one residual at some order within the table.
            let pot = OscillatorPotential::new(
                Rational::one(),
                Rational::one(),
                vec![rat("1/3"), rat("-2/7")],
            )
            .unwrap();
            let qn = QuantumNumbers::new(2, 1);
            let (energies, table) = oscillator::expand(&pot, &qn, 8).unwrap();
            for (k, i, delta) in [(0, 1, "1"), (1, 0, "-1/2"), (3, 2, "1"), (8, 5, "2/3")] {
                let poked = table.with_perturbed_entry(k, i, &rat(delta)).unwrap();
                let detected = (0..=8).any(|order| {
                    !verify::oscillator_residual(&poked, &energies, &pot, &qn, order)
                        .unwrap()
                        .all_zero()
                });
                assert!(
                    detected,
                    "perturbation of C^{k}_{i} by {delta} went unnoticed"
                );
            }
        },
    );
}
