//! `lpt`: exact hbar-expansion energy series for radial bound states.
//!
//! Subcommands:
//! * `osc`         — anharmonic-oscillator energy series
//! * `coulomb`     — screened-Coulomb energy series from Taylor coefficients
//! * `debye-table` — binding-energy table for the Debye potential plus
//!   the numerically integrated reference value
//! * `verify`      — Riccati residuals, quantization residues and the
//!   closed-form cross-check
//! * `solve-num`   — standalone Numerov eigenvalue solve
//!
//! All series parameters are parsed as exact rationals ("1/25" or "0.04",
//! never through binary floating point). Exit codes: 0 success, 1 validation
//! error, 2 verification failure, 3 oracle non-convergence.

mod render;

use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lpt_core::coulomb::{self, CoulombPotential, DebyeSpec};
use lpt_core::oracle::{self, RadialProblem, SolverConfig};
use lpt_core::oscillator::{self, OscillatorPotential};
use lpt_core::verify;
use lpt_core::{Error, QuantumNumbers, Rational};

use render::{format_f64, Format, SeriesOutput, SignConvention};

#[derive(Parser)]
#[command(
    name = "lpt",
    version,
    about = "Exact hbar-expansion energy series for radial bound states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy series for the spherical anharmonic oscillator
    Osc(OscArgs),
    /// Energy series for a screened Coulomb potential V(r) = (1/r) sum V_i r^i
    Coulomb(CoulombArgs),
    /// Debye binding-energy table: partial sums at K = 0..5,10,15,20,25 plus
    /// the numerically integrated eigenvalue
    DebyeTable(DebyeTableArgs),
    /// Consistency suite: Riccati residuals, quantization residues and the
    /// recursion/closed-form cross-check
    Verify(VerifyArgs),
    /// Numerov eigenvalue solve without any series
    SolveNum(SolveNumArgs),
}

#[derive(Args)]
struct OscArgs {
    /// Mass m (fraction or exact decimal string)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    /// Angular frequency w
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    omega: String,
    /// Anharmonic couplings f_1,f_2,... of V = m w^2 r^2/2 + sum f_i r^{2i+2}
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<String>,
    /// Radial quantum number
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Orbital quantum number
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Expansion order K
    #[arg(short = 'K', long = "order", default_value_t = 5)]
    order: usize,
    #[arg(long, default_value_t = 10)]
    digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[arg(long, value_enum, default_value_t = SignConvention::Energy)]
    sign: SignConvention,
    /// Evaluation point of the partial sums
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    hbar: String,
}

#[derive(Args)]
struct CoulombArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    /// Taylor coefficients V_0,V_1,... (V_0 < 0 for a bound state)
    #[arg(
        long = "V",
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    v: Vec<String>,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(short = 'K', long = "order", default_value_t = 5)]
    order: usize,
    #[arg(long, default_value_t = 10)]
    digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[arg(long, value_enum, default_value_t = SignConvention::Energy)]
    sign: SignConvention,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    hbar: String,
}

#[derive(Args)]
struct DebyeTableArgs {
    /// Coulomb coupling alpha of V = -(alpha/r) exp(-kappa r)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    /// Screening parameter kappa
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 10)]
    digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Binding energy -E is the table convention; `energy` flips it back
    #[arg(long, value_enum, default_value_t = SignConvention::Binding)]
    sign: SignConvention,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    hbar: String,
    /// Skip the numeric eigenvalue row
    #[arg(long)]
    no_oracle: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which family to verify
    #[arg(long, default_value = "both", value_parser = ["both", "oscillator", "coulomb"])]
    family: String,
    /// Verify residuals through this order
    #[arg(short = 'K', long = "order", default_value_t = 10)]
    order: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    omega: String,
    /// Oscillator couplings (default 1,1,1,1)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<String>,
    /// Coulomb Taylor coefficients (default -1,1/7,-1/11,1/13,-1/17,1/19)
    #[arg(long = "V", value_delimiter = ',', allow_hyphen_values = true)]
    v: Vec<String>,
    /// Deliberately corrupt one table entry and demand the suite notices
    #[arg(long)]
    self_test_corruption: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args)]
struct SolveNumArgs {
    /// Potential family to solve
    #[arg(long, value_parser = ["debye", "oscillator"])]
    family: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    m: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    omega: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<String>,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 10)]
    digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[arg(long, value_enum, default_value_t = SignConvention::Energy)]
    sign: SignConvention,
    /// Override the mesh point count
    #[arg(long)]
    mesh: Option<usize>,
    /// Override the outer wall radius
    #[arg(long)]
    r_max: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let done = err.print();
            debug_assert!(done.is_ok());
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::NoLevelInBracket { .. } | Error::NoConvergence { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Osc(args) => cmd_osc(args),
        Command::Coulomb(args) => cmd_coulomb(args),
        Command::DebyeTable(args) => cmd_debye_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::SolveNum(args) => cmd_solve_num(args),
    }
}

fn parse_rational(token: &str) -> Result<Rational, Error> {
    Rational::from_str(token)
}

fn parse_list(tokens: &[String]) -> Result<Vec<Rational>, Error> {
    tokens.iter().map(|t| parse_rational(t)).collect()
}

fn cmd_osc(args: OscArgs) -> Result<ExitCode, Error> {
    let pot = OscillatorPotential::new(
        parse_rational(&args.m)?,
        parse_rational(&args.omega)?,
        parse_list(&args.f)?,
    )?;
    let hbar = parse_rational(&args.hbar)?;
    let qn = QuantumNumbers::new(args.n, args.l);
    let (energies, _) = oscillator::expand(&pot, &qn, args.order)?;
    let corrections: Vec<(usize, Rational)> = energies
        .corrections()
        .map(|(k, value)| (k, value.clone()))
        .collect();
    let mut partial_sums = Vec::with_capacity(corrections.len());
    for k in 1..=args.order {
        partial_sums.push((k, args.sign.apply(&energies.partial_sum(k, &hbar)?)));
    }
    let output = SeriesOutput {
        family: "oscillator",
        n: args.n,
        l: args.l,
        order: args.order,
        digits: args.digits,
        corrections,
        partial_sums,
        oracle: None,
    };
    print!("{}", output.render(args.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_coulomb(args: CoulombArgs) -> Result<ExitCode, Error> {
    let pot = CoulombPotential::new(parse_rational(&args.m)?, parse_list(&args.v)?)?;
    let hbar = parse_rational(&args.hbar)?;
    let qn = QuantumNumbers::new(args.n, args.l);
    let (energies, _) = coulomb::expand(&pot, &qn, args.order)?;
    let corrections: Vec<(usize, Rational)> = energies
        .corrections()
        .map(|(k, value)| (k, value.clone()))
        .collect();
    let mut partial_sums = Vec::with_capacity(corrections.len());
    for k in 0..=args.order {
        partial_sums.push((k, args.sign.apply(&energies.partial_sum(k, &hbar)?)));
    }
    let output = SeriesOutput {
        family: "coulomb",
        n: args.n,
        l: args.l,
        order: args.order,
        digits: args.digits,
        corrections,
        partial_sums,
        oracle: None,
    };
    print!("{}", output.render(args.format));
    Ok(ExitCode::SUCCESS)
}

/// Orders the reference table prints: every order through five, then
/// every fifth through twenty-five.
const TABLE_ORDERS: [usize; 10] = [0, 1, 2, 3, 4, 5, 10, 15, 20, 25];

fn cmd_debye_table(args: DebyeTableArgs) -> Result<ExitCode, Error> {
    let alpha = parse_rational(&args.alpha)?;
    let kappa = parse_rational(&args.kappa)?;
    let mass = parse_rational(&args.m)?;
    let hbar = parse_rational(&args.hbar)?;
    let order = *TABLE_ORDERS.last().expect("non-empty");
    let spec = DebyeSpec::new(alpha.clone(), kappa.clone())?;
    let pot = coulomb::debye_taylor(&spec, order + 1).with_mass(mass.clone())?;
    let qn = QuantumNumbers::new(args.n, args.l);
    let (energies, _) = coulomb::expand(&pot, &qn, order)?;

    let corrections: Vec<(usize, Rational)> = energies
        .corrections()
        .map(|(k, value)| (k, value.clone()))
        .collect();
    let mut partial_sums = Vec::with_capacity(TABLE_ORDERS.len());
    for k in TABLE_ORDERS {
        partial_sums.push((k, args.sign.apply(&energies.partial_sum(k, &hbar)?)));
    }

    let oracle = if args.no_oracle {
        None
    } else {
        let problem = RadialProblem::debye(alpha.to_f64(), kappa.to_f64(), args.n, args.l)?
            .with_mass(mass.to_f64())?;
        let config = SolverConfig::default_for(&problem);
        let energy = oracle::solve_eigenvalue(&problem, &config)?;
        Some(args.sign.apply_f64(energy))
    };

    let output = SeriesOutput {
        family: "debye",
        n: args.n,
        l: args.l,
        order,
        digits: args.digits,
        corrections,
        partial_sums,
        oracle,
    };
    print!("{}", output.render(args.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve_num(args: SolveNumArgs) -> Result<ExitCode, Error> {
    let problem = match args.family.as_str() {
        "debye" => RadialProblem::debye(
            parse_rational(&args.alpha)?.to_f64(),
            parse_rational(&args.kappa)?.to_f64(),
            args.n,
            args.l,
        )?
        .with_mass(parse_rational(&args.m)?.to_f64())?,
        _ => RadialProblem::oscillator(
            parse_rational(&args.m)?.to_f64(),
            parse_rational(&args.omega)?.to_f64(),
            parse_list(&args.f)?.iter().map(Rational::to_f64).collect(),
            args.n,
            args.l,
        )?,
    };
    let mut config = SolverConfig::default_for(&problem);
    if let Some(mesh) = args.mesh {
        config = config.with_mesh_points(mesh);
    }
    if let Some(r_max) = args.r_max {
        config.r_max = r_max;
    }
    let energy = args
        .sign
        .apply_f64(oracle::solve_eigenvalue(&problem, &config)?);
    let rendered = format_f64(energy, args.digits);
    match args.format {
        Format::Pretty => println!("E = {rendered}"),
        Format::Csv => {
            println!("family,n,l,energy");
            println!("{},{},{},{rendered}", args.family, args.n, args.l);
        }
        Format::Json => {
            let value = json!({
                "family": args.family,
                "n": args.n,
                "l": args.l,
                "oracle": rendered,
            });
            println!("{}", render::to_pretty(&value));
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct FamilyVerification {
    family: &'static str,
    residual_orders: usize,
    residuals_all_zero: bool,
    quantization_ok: bool,
    cross_check_comparisons: usize,
    mismatches: Vec<verify::Mismatch>,
}

impl FamilyVerification {
    fn passed(&self) -> bool {
        self.residuals_all_zero && self.quantization_ok && self.mismatches.is_empty()
    }

    fn to_json(&self) -> Value {
        let mismatches: Vec<Value> = self
            .mismatches
            .iter()
            .map(|m| {
                json!({
                    "n": m.n,
                    "l": m.l,
                    "k": m.k,
                    "recursion": m.recursion.to_string(),
                    "closed_form": m.closed_form.to_string(),
                })
            })
            .collect();
        json!({
            "family": self.family,
            "riccati": {
                "orders": self.residual_orders,
                "all_zero": self.residuals_all_zero,
            },
            "quantization_ok": self.quantization_ok,
            "cross_check": {
                "comparisons": self.cross_check_comparisons,
                "mismatches": mismatches,
            },
            "passed": self.passed(),
        })
    }

    fn to_text(&self) -> String {
        format!(
            "{}: riccati residuals k<={} {}; quantization {}; cross-check {} comparisons, {} mismatches\n",
            self.family,
            self.residual_orders,
            if self.residuals_all_zero { "all zero" } else { "NONZERO" },
            if self.quantization_ok { "ok" } else { "VIOLATED" },
            self.cross_check_comparisons,
            self.mismatches.len(),
        )
    }
}

fn verify_oscillator(pot: &OscillatorPotential, order: usize) -> Result<FamilyVerification, Error> {
    let gridpoints = verify::default_grid();
    let mut residuals_all_zero = true;
    let mut quantization_ok = true;
    for qn in &gridpoints {
        let (energies, table) = oscillator::expand(pot, qn, order)?;
        for k in 0..=order {
            residuals_all_zero &=
                verify::oscillator_residual(&table, &energies, pot, qn, k)?.all_zero();
            if k >= 1 {
                let expected = if k == 1 {
                    Rational::from(qn.zeros_oscillator())
                } else {
                    Rational::zero()
                };
                quantization_ok &= verify::quantization_residue(&table, k)? == expected;
            }
        }
    }
    let cross =
        verify::cross_check_oscillator(std::slice::from_ref(pot), &gridpoints, order.clamp(1, 5))?;
    Ok(FamilyVerification {
        family: "oscillator",
        residual_orders: order,
        residuals_all_zero,
        quantization_ok,
        cross_check_comparisons: cross.comparisons,
        mismatches: cross.mismatches,
    })
}

fn verify_coulomb(pot: &CoulombPotential, order: usize) -> Result<FamilyVerification, Error> {
    let gridpoints = verify::default_grid();
    let mut residuals_all_zero = true;
    let mut quantization_ok = true;
    for qn in &gridpoints {
        let (energies, table) = coulomb::expand(pot, qn, order)?;
        for k in 0..=order {
            residuals_all_zero &=
                verify::coulomb_residual(&table, &energies, pot, qn, k)?.all_zero();
            if k >= 1 {
                let expected = if k == 1 {
                    Rational::from(qn.zeros_coulomb())
                } else {
                    Rational::zero()
                };
                quantization_ok &= verify::quantization_residue(&table, k)? == expected;
            }
        }
    }
    let cross = verify::cross_check_coulomb(std::slice::from_ref(pot), &gridpoints, order.min(5))?;
    Ok(FamilyVerification {
        family: "coulomb",
        residual_orders: order,
        residuals_all_zero,
        quantization_ok,
        cross_check_comparisons: cross.comparisons,
        mismatches: cross.mismatches,
    })
}

/// Corruption self-test: perturb one entry of a healthy table and demand a
/// residual notices. Reported as a deliberate failure with exit code 2.
fn corruption_self_test() -> Result<bool, Error> {
    let pot = OscillatorPotential::new(Rational::one(), Rational::one(), vec![Rational::one()])?;
    let qn = QuantumNumbers::new(1, 1);
    let (energies, table) = oscillator::expand(&pot, &qn, 6)?;
    let poked = table.with_perturbed_entry(2, 1, &Rational::one())?;
    for k in 0..=6 {
        if !verify::oscillator_residual(&poked, &energies, &pot, &qn, k)?.all_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let order = args.order.max(1);
    let mut reports = Vec::new();
    if args.family == "both" || args.family == "oscillator" {
        let couplings = if args.f.is_empty() {
            vec![Rational::one(); 4]
        } else {
            parse_list(&args.f)?
        };
        let pot = OscillatorPotential::new(
            parse_rational(&args.m)?,
            parse_rational(&args.omega)?,
            couplings,
        )?;
        reports.push(verify_oscillator(&pot, order)?);
    }
    if args.family == "both" || args.family == "coulomb" {
        let coefficients = if args.v.is_empty() {
            ["-1", "1/7", "-1/11", "1/13", "-1/17", "1/19"]
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            parse_list(&args.v)?
        };
        let pot = CoulombPotential::new(parse_rational(&args.m)?, coefficients)?;
        reports.push(verify_coulomb(&pot, order)?);
    }

    let corruption_detected = if args.self_test_corruption {
        Some(corruption_self_test()?)
    } else {
        None
    };

    let mut passed = reports.iter().all(FamilyVerification::passed);
    // The self-test is a deliberate failure: detecting the corruption is
    // the expected outcome, and it still exits nonzero.
    if corruption_detected.is_some() {
        passed = false;
    }

    match args.format {
        Format::Json => {
            let value = json!({
                "reports": reports.iter().map(FamilyVerification::to_json).collect::<Vec<_>>(),
                "corruption_self_test": corruption_detected.map(|detected| {
                    json!({ "detected": detected })
                }),
                "passed": passed,
            });
            println!("{}", render::to_pretty(&value));
        }
        _ => {
            for report in &reports {
                print!("{}", report.to_text());
            }
            match corruption_detected {
                Some(true) => {
                    println!("corruption self-test: perturbed entry detected (deliberate failure)")
                }
                Some(false) => println!("corruption self-test: PERTURBATION WENT UNNOTICED"),
                None => {}
            }
            println!("verification {}", if passed { "passed" } else { "FAILED" });
        }
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
