//! Floating-point eigenvalue solver for the reduced radial equation.
//!
//! This is the independent check on the summed perturbation series: nothing
//! here touches rational arithmetic or the recursion tables. The reduced
//! radial equation `-U''/(2m) + (V(r) + l(l+1)/(2 m r^2)) U = E U` (hbar=1)
//! is integrated with the fourth-order three-term Numerov recurrence on a
//! uniform mesh, outward from a regular `r^{l+1}` seed and inward from a
//! decaying seed at the outer wall, and matched at the outer classical
//! turning point. Bisection on the node count isolates the requested level;
//! bisection on the sign of the matching defect refines it to tolerance.

use crate::error::Error;

/// Built-in potential shapes the solver understands.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialPotential {
    /// `V(r) = -(alpha/r) exp(-kappa r)`; `kappa = 0` is the pure Coulomb
    /// potential.
    Debye { alpha: f64, kappa: f64 },
    /// `V(r) = m w^2 r^2 / 2 + sum_i f_i r^{2i+2}` with `f` listed from
    /// `f_1`.
    PolynomialOscillator { omega: f64, anharmonic: Vec<f64> },
}

/// One bound-state problem: a potential, a mass, an orbital quantum number
/// and the radial quantum number `n` (target node count).
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProblem {
    potential: RadialPotential,
    mass: f64,
    l: u32,
    nodes: u32,
}

impl RadialProblem {
    pub fn new(potential: RadialPotential, mass: f64, n: u32, l: u32) -> Result<Self, Error> {
        if mass.is_nan() || mass <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {mass}"
            )));
        }
        if let RadialPotential::Debye { alpha, kappa } = &potential {
            if alpha.is_nan() || *alpha <= 0.0 || kappa.is_nan() || *kappa < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "Debye potential needs alpha > 0 and kappa >= 0, got alpha={alpha}, kappa={kappa}"
                )));
            }
        }
        if let RadialPotential::PolynomialOscillator { omega, .. } = &potential {
            if omega.is_nan() || *omega <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "oscillator frequency must be positive, got {omega}"
                )));
            }
        }
        Ok(RadialProblem {
            potential,
            mass,
            l,
            nodes: n,
        })
    }

    pub fn debye(alpha: f64, kappa: f64, n: u32, l: u32) -> Result<Self, Error> {
        Self::new(RadialPotential::Debye { alpha, kappa }, 1.0, n, l)
    }

    pub fn oscillator(
        mass: f64,
        omega: f64,
        anharmonic: Vec<f64>,
        n: u32,
        l: u32,
    ) -> Result<Self, Error> {
        Self::new(
            RadialPotential::PolynomialOscillator { omega, anharmonic },
            mass,
            n,
            l,
        )
    }

    pub fn with_mass(mut self, mass: f64) -> Result<Self, Error> {
        if mass.is_nan() || mass <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {mass}"
            )));
        }
        self.mass = mass;
        Ok(self)
    }

    pub fn nodes(&self) -> u32 {
        self.nodes
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    fn bare_potential(&self, r: f64) -> f64 {
        match &self.potential {
            RadialPotential::Debye { alpha, kappa } => -alpha * (-kappa * r).exp() / r,
            RadialPotential::PolynomialOscillator { omega, anharmonic } => {
                let mut v = 0.5 * self.mass * omega * omega * r * r;
                let r2 = r * r;
                let mut power = r2 * r2;
                for f in anharmonic {
                    v += f * power;
                    power *= r2;
                }
                v
            }
        }
    }

    /// `2 m V_eff(r)`, so that `U'' = (weight - 2 m E) U`.
    fn effective_weight(&self, r: f64) -> f64 {
        let centrifugal = (self.l * (self.l + 1)) as f64 / (2.0 * self.mass * r * r);
        2.0 * self.mass * (self.bare_potential(r) + centrifugal)
    }

    /// Regular small-r behavior `r^{l+1}(1 + c_1 r + c_2 r^2)` used to seed
    /// the outward sweep. The first mesh step is much larger than `r_min`,
    /// so a bare power law would admix the irregular solution at the level
    /// of the dropped series terms; two extra orders keep that admixture
    /// below the eigenvalue tolerance.
    fn regular_seed(&self, r: f64, energy: f64) -> f64 {
        let lp1 = (self.l + 1) as f64;
        let m = self.mass;
        let (c1, c2) = match &self.potential {
            RadialPotential::Debye { alpha, kappa } => {
                let c1 = -m * alpha / lp1;
                let c2 = (2.0 * m * (-alpha) * c1 + 2.0 * m * alpha * kappa - 2.0 * m * energy)
                    / (4.0 * lp1 + 2.0);
                (c1, c2)
            }
            RadialPotential::PolynomialOscillator { .. } => (0.0, -m * energy / (2.0 * lp1 + 1.0)),
        };
        r.powi(self.l as i32 + 1) * (1.0 + c1 * r + c2 * r * r)
    }
}

/// Mesh, bracket and stopping tolerance of one eigenvalue search.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub mesh_points: usize,
    pub energy_bracket: (f64, f64),
    pub tolerance: f64,
}

impl SolverConfig {
    /// Defaults matched to the built-in potentials: the mesh starts at
    /// 1e-6 of the characteristic length, ends far beyond the classical
    /// region (`max(40/kappa, 40 N^2/(m alpha))` for Debye,
    /// `15 sqrt((2N+1)/(m w))` for the oscillator) and brackets the level
    /// between 1.5x the unscreened Coulomb energy and zero, or zero and 3x
    /// the harmonic energy.
    pub fn default_for(problem: &RadialProblem) -> Self {
        let l = problem.l as f64;
        let n = problem.nodes as f64;
        match &problem.potential {
            RadialPotential::Debye { alpha, kappa } => {
                let zero_count = n + l + 1.0;
                let scale = zero_count * zero_count / (problem.mass * alpha);
                let coulomb_energy =
                    -problem.mass * alpha * alpha / (2.0 * zero_count * zero_count);
                let tail = 40.0 * scale;
                let r_max = if *kappa > 0.0 {
                    (40.0 / kappa).max(tail)
                } else {
                    tail
                };
                SolverConfig {
                    r_min: 1e-6 * scale,
                    r_max,
                    mesh_points: 200_000,
                    energy_bracket: (1.5 * coulomb_energy, 0.0),
                    tolerance: 1e-12,
                }
            }
            RadialPotential::PolynomialOscillator { omega, .. } => {
                let zero_count = 2.0 * n + l + 1.0;
                let scale = ((2.0 * zero_count + 1.0) / (problem.mass * omega)).sqrt();
                let harmonic_energy = (2.0 * n + l + 1.5) * omega;
                SolverConfig {
                    r_min: 1e-6 * scale,
                    r_max: 15.0 * scale,
                    mesh_points: 200_000,
                    energy_bracket: (0.0, 3.0 * harmonic_energy),
                    tolerance: 1e-12,
                }
            }
        }
    }

    pub fn with_mesh_points(mut self, mesh_points: usize) -> Self {
        self.mesh_points = mesh_points;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_bracket(mut self, lo: f64, hi: f64) -> Self {
        self.energy_bracket = (lo, hi);
        self
    }
}

const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

struct Shot {
    nodes: u32,
    defect: f64,
    outward_log_derivative: f64,
}

/// Index of the outer classical turning point, clamped inside the mesh.
fn match_index(weights: &[f64], two_m_e: f64) -> usize {
    let m = weights.len() - 1;
    let mut idx = m / 2;
    for i in (0..=m).rev() {
        if weights[i] - two_m_e <= 0.0 {
            idx = i;
            break;
        }
    }
    idx.clamp(3, m - 3)
}

fn shoot(problem: &RadialProblem, config: &SolverConfig, weights: &[f64], energy: f64) -> Shot {
    let mesh = config.mesh_points;
    let h = (config.r_max - config.r_min) / mesh as f64;
    let h2_over_12 = h * h / 12.0;
    let two_m_e = 2.0 * problem.mass * energy;
    let t = |i: usize| h2_over_12 * (weights[i] - two_m_e);
    let im = match_index(weights, two_m_e);

    // Outward sweep: regular seed U ~ r^{l+1}, nodes counted over the whole
    // mesh (Sturm count: one node enters from the wall as E crosses each
    // level). The three values around the match index are kept for the
    // log-derivative; rescaling is suppressed there so they stay coherent.
    let mut u_prev = problem.regular_seed(config.r_min, energy);
    let mut u_cur = problem.regular_seed(config.r_min + h, energy);
    let mut nodes = 0u32;
    let mut saved_out = [0.0f64; 3]; // u at im-1, im, im+1
    let mut t_prev = t(0);
    let mut t_cur = t(1);
    for i in 1..mesh {
        let t_next = t(i + 1);
        let u_next = ((2.0 + 10.0 * t_cur) * u_cur - (1.0 - t_prev) * u_prev) / (1.0 - t_next);
        if u_next * u_cur < 0.0 {
            nodes += 1;
        }
        let j = i + 1;
        if j + 1 == im {
            saved_out[0] = u_next;
        } else if j == im {
            saved_out[1] = u_next;
        } else if j == im + 1 {
            saved_out[2] = u_next;
        }
        u_prev = u_cur;
        u_cur = u_next;
        t_prev = t_cur;
        t_cur = t_next;
        if u_cur.abs() > RESCALE_THRESHOLD && j.abs_diff(im) > 2 {
            u_prev *= RESCALE_FACTOR;
            u_cur *= RESCALE_FACTOR;
        }
    }

    // Inward sweep from the wall with a decaying seed, down to im-1.
    let mut v_next = 0.0f64;
    let mut v_cur = h;
    let mut saved_in = [0.0f64; 3]; // v at im-1, im, im+1
    if im + 1 == mesh - 1 {
        saved_in[2] = v_cur;
    }
    let mut t_next_in = t(mesh);
    let mut t_cur_in = t(mesh - 1);
    for i in (1..mesh).rev() {
        let t_prev_in = t(i - 1);
        let v_prev =
            ((2.0 + 10.0 * t_cur_in) * v_cur - (1.0 - t_next_in) * v_next) / (1.0 - t_prev_in);
        let j = i - 1;
        if j == im + 1 {
            saved_in[2] = v_prev;
        } else if j == im {
            saved_in[1] = v_prev;
        } else if j + 1 == im {
            saved_in[0] = v_prev;
            break;
        }
        v_next = v_cur;
        v_cur = v_prev;
        t_next_in = t_cur_in;
        t_cur_in = t_prev_in;
        if v_cur.abs() > RESCALE_THRESHOLD && j.abs_diff(im) > 2 {
            v_next *= RESCALE_FACTOR;
            v_cur *= RESCALE_FACTOR;
        }
    }

    let out_log = (saved_out[2] - saved_out[0]) / (2.0 * h * saved_out[1]);
    let in_log = (saved_in[2] - saved_in[0]) / (2.0 * h * saved_in[1]);
    Shot {
        nodes,
        defect: out_log - in_log,
        outward_log_derivative: out_log,
    }
}

fn weights_on_mesh(problem: &RadialProblem, config: &SolverConfig) -> Vec<f64> {
    let mesh = config.mesh_points;
    let h = (config.r_max - config.r_min) / mesh as f64;
    (0..=mesh)
        .map(|i| problem.effective_weight(config.r_min + i as f64 * h))
        .collect()
}

/// Single outward integration at the given energy: the node count of the
/// regular solution over the mesh and its logarithmic derivative at the
/// outer turning point. Overflow is handled by internal rescaling.
pub fn integrate_outward(
    problem: &RadialProblem,
    config: &SolverConfig,
    energy: f64,
) -> (u32, f64) {
    let weights = weights_on_mesh(problem, config);
    let shot = shoot(problem, config, &weights, energy);
    (shot.nodes, shot.outward_log_derivative)
}

/// Eigenvalue with the requested node count, to `config.tolerance`.
///
/// Strategy: bisection on the node count until the bracket isolates the
/// level, then bisection on the sign of the matching defect. Both
/// predicates are derivative-free and cannot leave the bracket. If the
/// defect signs fail to straddle (its zero crossing can be polluted by a
/// node sitting on the match point), the node-count bisection simply
/// continues to tolerance.
pub fn solve_eigenvalue(problem: &RadialProblem, config: &SolverConfig) -> Result<f64, Error> {
    let (mut lo, mut hi) = config.energy_bracket;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "energy bracket [{lo}, {hi}] is empty"
        )));
    }
    if config.mesh_points < 1000 {
        return Err(Error::InvalidParameter(
            "mesh must have at least 1000 points".into(),
        ));
    }
    let weights = weights_on_mesh(problem, config);
    let target = problem.nodes;

    let count_lo = shoot(problem, config, &weights, lo).nodes;
    let count_hi = shoot(problem, config, &weights, hi).nodes;
    if count_lo > target || count_hi <= target {
        return Err(Error::NoLevelInBracket {
            nodes: target,
            lo,
            hi,
        });
    }

    const MAX_ITERATIONS: usize = 300;
    let mut iterations = 0;

    // Phase one: shrink until exactly the requested level separates the
    // bracket ends.
    let mut count_lo = count_lo;
    let mut count_hi = count_hi;
    while !(count_lo == target && count_hi == target + 1) {
        if hi - lo <= config.tolerance {
            return Ok(0.5 * (lo + hi));
        }
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NoConvergence { iterations, lo, hi });
        }
        let mid = 0.5 * (lo + hi);
        let count = shoot(problem, config, &weights, mid).nodes;
        if count <= target {
            lo = mid;
            count_lo = count;
        } else {
            hi = mid;
            count_hi = count;
        }
    }

    // Phase two: refine on the matching defect where its signs straddle,
    // otherwise keep narrowing on the node count.
    let mut defect_lo = shoot(problem, config, &weights, lo).defect;
    let defect_hi = shoot(problem, config, &weights, hi).defect;
    let defect_usable =
        defect_lo.is_finite() && defect_hi.is_finite() && defect_lo.signum() != defect_hi.signum();

    while hi - lo > config.tolerance {
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NoConvergence { iterations, lo, hi });
        }
        let mid = 0.5 * (lo + hi);
        let shot = shoot(problem, config, &weights, mid);
        let go_up = if defect_usable && shot.defect.is_finite() {
            if shot.defect == 0.0 {
                return Ok(mid);
            }
            shot.defect.signum() == defect_lo.signum()
        } else {
            shot.nodes <= target
        };
        if go_up {
            lo = mid;
            if shot.defect.is_finite() {
                defect_lo = shot.defect;
            }
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_default(problem: &RadialProblem) -> f64 {
        let config = SolverConfig::default_for(problem);
        solve_eigenvalue(problem, &config).unwrap()
    }

    #[test]
    fn hydrogen_ground_state() {
        let problem = RadialProblem::debye(1.0, 0.0, 0, 0).unwrap();
        let energy = solve_default(&problem);
        assert!((energy + 0.5).abs() < 1e-10, "got {energy}");
    }

    #[test]
    fn hydrogen_excited_states_and_monotonicity() {
        let mut previous = f64::NEG_INFINITY;
        for n in 0..=2u32 {
            let problem = RadialProblem::debye(1.0, 0.0, n, 0).unwrap();
            let zero_count = f64::from(n + 1);
            let energy = solve_default(&problem);
            let exact = -0.5 / (zero_count * zero_count);
            assert!((energy - exact).abs() < 1e-9, "n={n}: {energy} vs {exact}");
            assert!(energy > previous, "levels must increase with n");
            previous = energy;
        }
    }

    #[test]
    fn hydrogen_node_counts() {
        let problem = RadialProblem::debye(1.0, 0.0, 0, 0).unwrap();
        let config = SolverConfig::default_for(&problem);
        let (nodes_at_ground, _) = integrate_outward(&problem, &config, -0.5);
        assert_eq!(nodes_at_ground, 0);
        let (nodes_above_first_excited, _) = integrate_outward(&problem, &config, -0.120);
        assert!(nodes_above_first_excited >= 1);
    }

    #[test]
    fn harmonic_oscillator_levels() {
        for (n, l) in [(0u32, 0u32), (1, 0), (0, 2), (1, 1)] {
            let problem = RadialProblem::oscillator(1.0, 1.0, vec![], n, l).unwrap();
            let energy = solve_default(&problem);
            let exact = 2.0 * f64::from(n) + f64::from(l) + 1.5;
            assert!(
                (energy - exact).abs() < 1e-9,
                "(n,l)=({n},{l}): {energy} vs {exact}"
            );
        }
    }

    #[test]
    fn quartic_oscillator_sits_above_the_harmonic_level() {
        let problem = RadialProblem::oscillator(1.0, 1.0, vec![0.1], 0, 0).unwrap();
        let energy = solve_default(&problem);
        assert!(energy > 1.5 && energy < 2.5, "got {energy}");
    }

    #[test]
    fn debye_ground_state_with_moderate_screening() {
        let problem = RadialProblem::debye(1.0, 0.2, 0, 0).unwrap();
        let energy = solve_default(&problem);
        assert!(
            (energy + 0.3268085112).abs() < 1e-8,
            "got {energy:.10}, want -0.3268085112"
        );
    }

    #[test]
    fn node_count_is_correct_at_the_solution() {
        let problem = RadialProblem::debye(1.0, 0.2, 0, 0).unwrap();
        let config = SolverConfig::default_for(&problem);
        let energy = solve_eigenvalue(&problem, &config).unwrap();
        let (nodes, _) = integrate_outward(&problem, &config, energy - 1e-9);
        assert_eq!(nodes, 0);

        let excited = RadialProblem::debye(1.0, 0.0, 1, 0).unwrap();
        let config = SolverConfig::default_for(&excited);
        let energy = solve_eigenvalue(&excited, &config).unwrap();
        let (nodes, _) = integrate_outward(&excited, &config, energy - 1e-9);
        assert_eq!(nodes, 1);
    }

    #[test]
    fn mesh_convergence() {
        let problem = RadialProblem::debye(1.0, 0.0, 0, 0).unwrap();
        let claimed_tolerance = 1e-10;
        let coarse = SolverConfig::default_for(&problem)
            .with_mesh_points(100_000)
            .with_tolerance(claimed_tolerance);
        let fine = SolverConfig::default_for(&problem)
            .with_mesh_points(200_000)
            .with_tolerance(claimed_tolerance);
        let e_coarse = solve_eigenvalue(&problem, &coarse).unwrap();
        let e_fine = solve_eigenvalue(&problem, &fine).unwrap();
        assert!(
            (e_coarse - e_fine).abs() < 10.0 * claimed_tolerance,
            "halving the step moved the level by {}",
            (e_coarse - e_fine).abs()
        );
    }

    #[test]
    fn overscreened_potential_has_no_level() {
        let problem = RadialProblem::debye(1.0, 5.0, 0, 0).unwrap();
        let config = SolverConfig::default_for(&problem);
        assert!(matches!(
            solve_eigenvalue(&problem, &config),
            Err(Error::NoLevelInBracket { .. })
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RadialProblem::debye(-1.0, 0.1, 0, 0).is_err());
        assert!(RadialProblem::debye(1.0, -0.1, 0, 0).is_err());
        assert!(RadialProblem::oscillator(0.0, 1.0, vec![], 0, 0).is_err());
        let problem = RadialProblem::debye(1.0, 0.0, 0, 0).unwrap();
        let config = SolverConfig::default_for(&problem).with_mesh_points(10);
        assert!(solve_eigenvalue(&problem, &config).is_err());
    }
}
