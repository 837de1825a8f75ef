//! braidforge: verifiers, generators, and unitary evolution for the
//! extraspecial 2-group braiding machinery, with reproducible text or JSON
//! output.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use braidforge::braid::{self, BraidRep};
use braidforge::decomp::{self, DecompositionPrediction};
use braidforge::espgroup;
use braidforge::ghz;
use braidforge::linalg::dense::DEFAULT_DENSE_CAP;
use braidforge::linalg::io::{MatrixJson, MonomialJson, StateJson};
use braidforge::report::VerificationReport;
use braidforge::reps::{self, PhaseParams, RepSpec, SignConvention};
use braidforge::ybx;

#[derive(Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Braid-group representations from extraspecial 2-groups: verify identities, generate GHZ states, run Yang-Baxterized evolution"
)]
struct Cli {
    /// Comparison tolerance for all verifiers.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,

    /// Seed for randomized sweeps (fixed seed => identical output bytes).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Cap on dense-matrix dimensions (BRAIDFORGE_DENSE_CAP overrides the
    /// default; this flag overrides both).
    #[arg(long, global = true)]
    dense_cap: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run verifiers; exit 0 iff every requested check passes.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// GHZ-state generation and column-law verification.
    #[command(subcommand)]
    Ghz(GhzCommand),
    /// Evolve a product-basis state under B(θ') = e^(-θ' M).
    Evolve(EvolveArgs),
    /// Apply a braid word such as "b1 b2^-1 b1" to a basis state.
    Apply(ApplyArgs),
    /// Compare predicted and computed irreducible multiplicities.
    Decompose(DecomposeArgs),
    /// Write matrices, generators, GHZ bases, or Hamiltonians as JSON.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Group-layer checks: order, center, commutators, multiplication oracle.
    Group(GroupArgs),
    /// Generator-image relations (squares, commutation pattern, anti-Hermiticity).
    Rep(RepArgs),
    /// Braid relation, far commutation, unitarity, squares, conjugation law.
    Braid(BraidArgs),
    /// Generalized Yang-Baxter equation for the block structure.
    Gybe(GybeArgs),
    /// Multiplicative quantum Yang-Baxter equation (spectral parameters).
    Qybe(QybeArgs),
    /// Additive quantum Yang-Baxter equation (tanh parameterization).
    QybeAdditive(QybeAdditiveArgs),
    /// Characteristic identity (B - ζ)(B - ζ*) = 0 and eigenvalue balance.
    Characteristic(RepArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Generator count.
    #[arg(long)]
    m: usize,
}

#[derive(Args, Clone)]
struct RepArgs {
    /// Representation class: 1 (deformed) or 2 (block).
    #[arg(long, required_unless_present = "spec_json")]
    class: Option<u8>,

    /// Generator count of the group (strands - 1).
    #[arg(long, required_unless_present = "spec_json")]
    m: Option<usize>,

    /// Class 1: half the factor dimension; class 2: stride exponent.
    #[arg(long, required_unless_present = "spec_json")]
    k: Option<usize>,

    /// Class 2 block exponent (the block acts on 2^N dimensions).
    #[arg(long = "N")]
    big_n: Option<usize>,

    /// Class 1 deformation angles, one per value of k (accepts "0.25pi").
    #[arg(long, value_delimiter = ',')]
    phi: Vec<String>,

    /// Full representation spec as JSON, e.g. {"class":2,"m":4,"N":3,"k":2}.
    #[arg(long, conflicts_with_all = ["class", "m", "k", "big_n", "phi"])]
    spec_json: Option<String>,
}

impl RepArgs {
    fn to_spec(&self) -> anyhow::Result<RepSpec> {
        if let Some(json) = &self.spec_json {
            return Ok(RepSpec::from_json(json)?);
        }
        let (class, m, k) = (
            self.class.context("--class is required")?,
            self.m.context("--m is required")?,
            self.k.context("--k is required")?,
        );
        match class {
            1 => {
                if self.big_n.is_some() {
                    bail!("--N applies only to class 2");
                }
                let phases = if self.phi.is_empty() {
                    PhaseParams::uniform(k)
                } else {
                    let angles = self
                        .phi
                        .iter()
                        .map(|s| parse_angle(s))
                        .collect::<anyhow::Result<Vec<f64>>>()?;
                    if angles.len() != k {
                        bail!("expected {k} angles, got {}", angles.len());
                    }
                    PhaseParams::from_angles(&angles)
                };
                Ok(RepSpec::class1_with(
                    m,
                    k,
                    phases,
                    SignConvention::default_for(k),
                )?)
            }
            2 => {
                let n = self.big_n.context("class 2 needs --N")?;
                if !self.phi.is_empty() {
                    bail!("--phi applies only to class 1");
                }
                Ok(RepSpec::class2(m, n, k)?)
            }
            other => bail!("unknown class {other}; use 1 or 2"),
        }
    }
}

#[derive(Args)]
struct ApplyArgs {
    #[command(flatten)]
    rep: RepArgs,

    /// Braid word, whitespace-separated letters: "b1 b2^-1 b1".
    #[arg(long)]
    word: String,

    /// Product-basis index the word acts on (1-based).
    #[arg(long, default_value_t = 1)]
    basis_index: usize,
}

#[derive(Args)]
struct BraidArgs {
    #[command(flatten)]
    rep: RepArgs,

    /// Also run the conjugation-law checks.
    #[arg(long)]
    conjugation: bool,
}

#[derive(Args)]
struct GybeArgs {
    /// Block exponent: the solution acts on 2^N dimensions.
    #[arg(long = "N")]
    big_n: usize,

    /// Identity-block exponent: flanking blocks have size 2^k.
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct QybeArgs {
    #[command(flatten)]
    rep: RepArgs,

    /// First spectral parameter.
    #[arg(long)]
    x: Option<f64>,

    /// Second spectral parameter.
    #[arg(long)]
    y: Option<f64>,

    /// Run a seeded random sweep of this many (x, y) pairs instead.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct QybeAdditiveArgs {
    #[command(flatten)]
    rep: RepArgs,

    #[arg(long)]
    theta1: Option<String>,

    #[arg(long)]
    theta2: Option<String>,

    /// Run a seeded random sweep of this many (Θ1, Θ2) pairs instead.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum GhzCommand {
    /// Print one GHZ state.
    Generate(GhzGenerateArgs),
    /// Verify the Bell-matrix column law.
    Verify(GhzVerifyArgs),
}

#[derive(Args)]
struct GhzGenerateArgs {
    #[arg(long)]
    qubits: usize,

    /// GHZ index in 1..2^qubits.
    #[arg(long)]
    index: usize,
}

#[derive(Args)]
struct GhzVerifyArgs {
    #[arg(long)]
    qubits: usize,

    /// Check the even-qubit deformed route instead of the direct one.
    #[arg(long)]
    class1_route: bool,
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long)]
    qubits: usize,

    /// Evolution angle θ' (accepts "0.25pi"); θ' = 0 is the identity.
    #[arg(long)]
    theta_prime: String,

    /// Product-basis index l in 1..2^qubits.
    #[arg(long)]
    basis_index: usize,

    /// Shorthand for --output json.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    class: u8,

    #[arg(long = "N")]
    big_n: Option<usize>,

    #[arg(long)]
    k: usize,

    /// Strand count n; the group rank is n - 1.
    #[arg(long)]
    strands: usize,
}

#[derive(Args)]
struct ExportArgs {
    /// What to export.
    #[arg(value_enum)]
    what: ExportWhat,

    #[arg(long)]
    qubits: Option<usize>,

    /// Generator index (for `generator`).
    #[arg(long, default_value_t = 1)]
    index: usize,

    #[arg(long)]
    class: Option<u8>,

    #[arg(long)]
    m: Option<usize>,

    #[arg(long)]
    k: Option<usize>,

    #[arg(long = "N")]
    big_n: Option<usize>,

    /// Output file path.
    #[arg(long)]
    path: std::path::PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    BellMatrix,
    Generator,
    GhzBasis,
    Hamiltonian,
}

/// Parse an angle given as a decimal or as a multiple of π ("0.25pi", "-pi").
fn parse_angle(s: &str) -> anyhow::Result<f64> {
    let t = s.trim();
    if let Some(coeff) = t.strip_suffix("pi") {
        let c = coeff.trim();
        let factor: f64 = if c.is_empty() || c == "+" {
            1.0
        } else if c == "-" {
            -1.0
        } else {
            c.parse().with_context(|| format!("bad angle {s:?}"))?
        };
        return Ok(factor * std::f64::consts::PI);
    }
    t.parse().with_context(|| format!("bad angle {s:?}"))
}

#[derive(Serialize)]
struct RunOutput {
    command: String,
    tolerance: f64,
    seed: u64,
    passed: bool,
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    state: Option<StateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionOutput>,
}

#[derive(Serialize)]
struct DecompositionOutput {
    strands: usize,
    dimension: usize,
    predicted_multiplicity: usize,
    predicted_multiplicity_closed_form: usize,
    computed_multiplicity: Option<usize>,
    predicted_commutant: usize,
    computed_commutant: Option<usize>,
}

struct Runner {
    tolerance: f64,
    seed: u64,
    dense_cap: usize,
    output: OutputFormat,
}

impl Runner {
    fn finish(&self, command: &str, mut out: RunOutput) -> anyhow::Result<ExitCode> {
        out.command = command.to_string();
        out.tolerance = self.tolerance;
        out.seed = self.seed;
        // Ordering is fixed by report name, independent of execution order.
        out.reports.sort_by(|a, b| a.name.cmp(&b.name));
        out.passed = out.reports.iter().all(|r| r.passed)
            && out
                .decomposition
                .as_ref()
                .map(|d| {
                    d.computed_multiplicity.is_none_or(|c| c == d.predicted_multiplicity)
                        && d.computed_commutant.is_none_or(|c| c == d.predicted_commutant)
                        && d.predicted_multiplicity == d.predicted_multiplicity_closed_form
                })
                .unwrap_or(true);
        match self.output {
            OutputFormat::Json => println!("{}", serde_json::to_string(&out)?),
            OutputFormat::Text => self.print_text(&out),
        }
        Ok(if out.passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        })
    }

    fn print_text(&self, out: &RunOutput) {
        for report in &out.reports {
            println!(
                "[{}] {}  max_error={:.3e} tol={:.3e}",
                if report.passed { "PASS" } else { "FAIL" },
                report.name,
                report.max_error,
                report.tolerance,
            );
            for check in &report.checks {
                if !check.passed {
                    println!("  [FAIL] {}  max_error={:.3e}", check.name, check.max_error);
                    if let Some(w) = &check.witness {
                        println!(
                            "         worst entry at {:?}: lhs={:+.6e}{:+.6e}i rhs={:+.6e}{:+.6e}i",
                            w.location, w.lhs.re, w.lhs.im, w.rhs.re, w.rhs.im
                        );
                    }
                }
            }
        }
        if let Some(state) = &out.state {
            for (i, (re, im)) in state.amplitudes.iter().enumerate() {
                if re.abs() > 1e-15 || im.abs() > 1e-15 {
                    println!("  |{}>  {:+.15}{:+.15}i", i + 1, re, im);
                }
            }
        }
        if let Some(d) = &out.decomposition {
            println!(
                "decomposition at n={} (dim {}): multiplicity predicted={} (closed form {}) computed={}, commutant predicted={} computed={}",
                d.strands,
                d.dimension,
                d.predicted_multiplicity,
                d.predicted_multiplicity_closed_form,
                d.computed_multiplicity.map_or("-".into(), |v| v.to_string()),
                d.predicted_commutant,
                d.computed_commutant.map_or("-".into(), |v| v.to_string()),
            );
        }
        println!("overall: {}", if out.passed { "PASS" } else { "FAIL" });
    }

    fn empty_output(&self) -> RunOutput {
        RunOutput {
            command: String::new(),
            tolerance: self.tolerance,
            seed: self.seed,
            passed: true,
            reports: Vec::new(),
            state: None,
            decomposition: None,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let dense_cap = cli
        .dense_cap
        .or_else(|| {
            std::env::var("BRAIDFORGE_DENSE_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_DENSE_CAP);
    let runner = Runner {
        tolerance: cli.tolerance,
        seed: cli.seed,
        dense_cap,
        output: cli.output,
    };
    let tol = runner.tolerance;

    match cli.command {
        Command::Verify(verify) => match verify {
            VerifyCommand::Group(args) => {
                let mut out = runner.empty_output();
                out.reports.push(espgroup::verify_group_structure(args.m)?);
                out.reports.push(reps::verify_multiply_oracle(args.m, tol)?);
                runner.finish("verify group", out)
            }
            VerifyCommand::Rep(args) => {
                let spec = args.to_spec()?;
                let mut out = runner.empty_output();
                out.reports.push(reps::verify_esp_relations(&spec, tol));
                if let Some(phases) = spec.phases() {
                    out.reports.push(reps::check_constraints_3constr(phases, tol));
                }
                runner.finish("verify rep", out)
            }
            VerifyCommand::Braid(args) => {
                let rep = BraidRep::new(args.rep.to_spec()?)?;
                let mut out = runner.empty_output();
                out.reports.push(braid::verify_braid_relations(&rep, tol)?);
                if args.conjugation {
                    out.reports.push(braid::conjugation_check(&rep, tol)?);
                }
                runner.finish("verify braid", out)
            }
            VerifyCommand::Gybe(args) => {
                let mut out = runner.empty_output();
                out.reports.push(braid::verify_gybe(args.big_n, args.k, tol)?);
                runner.finish("verify gybe", out)
            }
            VerifyCommand::Qybe(args) => {
                let spec = args.rep.to_spec()?;
                let mut out = runner.empty_output();
                if let Some(count) = args.samples {
                    out.reports
                        .push(ybx::qybe_sweep(&spec, runner.seed, count, 5.0, tol)?);
                } else {
                    let x = args.x.context("provide --x and --y, or --samples")?;
                    let y = args.y.context("provide --x and --y, or --samples")?;
                    out.reports.push(ybx::verify_qybe(&spec, x, y, tol)?);
                }
                runner.finish("verify qybe", out)
            }
            VerifyCommand::QybeAdditive(args) => {
                let spec = args.rep.to_spec()?;
                let mut out = runner.empty_output();
                if let Some(count) = args.samples {
                    out.reports.push(ybx::qybe_additive_sweep(
                        &spec,
                        runner.seed,
                        count,
                        3.0,
                        tol,
                    )?);
                } else {
                    let t1 = parse_angle(
                        &args.theta1.context("provide --theta1/--theta2, or --samples")?,
                    )?;
                    let t2 = parse_angle(
                        &args.theta2.context("provide --theta1/--theta2, or --samples")?,
                    )?;
                    out.reports
                        .push(ybx::verify_qybe_additive(&spec, t1, t2, tol)?);
                }
                runner.finish("verify qybe-additive", out)
            }
            VerifyCommand::Characteristic(args) => {
                let rep = BraidRep::new(args.to_spec()?)?;
                let b = rep.braid_generator(1)?;
                let mut out = runner.empty_output();
                out.reports.push(ybx::characteristic_check(&b, tol)?);
                runner.finish("verify characteristic", out)
            }
        },
        Command::Ghz(ghz_cmd) => match ghz_cmd {
            GhzCommand::Generate(args) => {
                let state = ghz::ghz_state(args.qubits, args.index)?;
                let mut out = runner.empty_output();
                out.state = Some(StateJson::from(&state));
                runner.finish("ghz generate", out)
            }
            GhzCommand::Verify(args) => {
                let mut out = runner.empty_output();
                if args.class1_route {
                    let b = ghz::class1_bell_matrix(args.qubits)?;
                    out.reports
                        .push(ghz::verify_ghz_columns_of(&b, args.qubits, tol));
                } else {
                    out.reports.push(ghz::verify_ghz_columns(args.qubits, tol)?);
                }
                runner.finish("ghz verify", out)
            }
        },
        Command::Evolve(args) => {
            let theta_prime = parse_angle(&args.theta_prime)?;
            let state = ybx::evolve(args.qubits, theta_prime, args.basis_index)?;
            let output = if args.json {
                OutputFormat::Json
            } else {
                runner.output
            };
            let runner = Runner { output, ..runner };
            let mut out = runner.empty_output();
            out.state = Some(StateJson::from(&state));
            runner.finish("evolve", out)
        }
        Command::Apply(args) => {
            let rep = BraidRep::new(args.rep.to_spec()?)?;
            let word = braid::BraidWord::parse(rep.strands(), &args.word)?;
            let start = braidforge::linalg::state::StateVector::basis(
                rep.dimension(),
                args.basis_index,
            )?;
            let state = rep.apply_word(&word, &start)?;
            let mut out = runner.empty_output();
            out.state = Some(StateJson::from(&state));
            runner.finish("apply", out)
        }
        Command::Decompose(args) => {
            let m = args
                .strands
                .checked_sub(1)
                .filter(|&m| m >= 1)
                .context("--strands must be at least 2")?;
            let spec = match args.class {
                1 => RepSpec::class1(m, args.k)?,
                2 => RepSpec::class2(m, args.big_n.context("class 2 needs --N")?, args.k)?,
                other => bail!("unknown class {other}; use 1 or 2"),
            };
            let prediction = DecompositionPrediction::for_spec(&spec);
            let computed_multiplicity = if m % 2 == 0 {
                Some(decomp::multiplicity_rho1(&spec)?)
            } else {
                None
            };
            let computed_commutant = if spec.dimension() <= decomp::COMMUTANT_DIM_CAP {
                Some(decomp::commutant_dimension(&spec, decomp::COMMUTANT_DIM_CAP)?)
            } else {
                None
            };
            let mut out = runner.empty_output();
            out.reports
                .push(decomp::noncentral_characters_vanish(&spec, tol)?);
            out.decomposition = Some(DecompositionOutput {
                strands: prediction.strands,
                dimension: prediction.dimension,
                predicted_multiplicity: prediction.multiplicity,
                predicted_multiplicity_closed_form:
                    DecompositionPrediction::closed_form_multiplicity(&spec),
                computed_multiplicity,
                predicted_commutant: prediction.commutant,
                computed_commutant,
            });
            runner.finish("decompose", out)
        }
        Command::Export(args) => {
            let json = match args.what {
                ExportWhat::BellMatrix => {
                    let qubits = args.qubits.context("export bell-matrix needs --qubits")?;
                    let b = ghz::bell_matrix(qubits)?;
                    serde_json::to_string(&MatrixJson::from(
                        &b.to_dense_with_cap(runner.dense_cap)?,
                    ))?
                }
                ExportWhat::Generator => {
                    let rep_args = RepArgs {
                        class: Some(args.class.context("export generator needs --class")?),
                        m: Some(args.m.context("export generator needs --m")?),
                        k: Some(args.k.context("export generator needs --k")?),
                        big_n: args.big_n,
                        phi: Vec::new(),
                        spec_json: None,
                    };
                    let spec = rep_args.to_spec()?;
                    let t = spec.generator(args.index)?;
                    serde_json::to_string(&MonomialJson::from(&t))?
                }
                ExportWhat::GhzBasis => {
                    let qubits = args.qubits.context("export ghz-basis needs --qubits")?;
                    let dim = 1usize << qubits;
                    let states: Vec<StateJson> = (1..=dim)
                        .map(|j| ghz::ghz_state(qubits, j).map(|s| StateJson::from(&s)))
                        .collect::<braidforge::Result<_>>()?;
                    serde_json::to_string(&states)?
                }
                ExportWhat::Hamiltonian => {
                    let qubits = args.qubits.context("export hamiltonian needs --qubits")?;
                    let family = ybx::ghz_family(qubits)?;
                    serde_json::to_string(&MatrixJson::from(
                        &family.hamiltonian(runner.dense_cap)?,
                    ))?
                }
            };
            let mut file = std::fs::File::create(&args.path)
                .with_context(|| format!("cannot write {}", args.path.display()))?;
            file.write_all(json.as_bytes())?;
            file.write_all(b"\n")?;
            println!("wrote {}", args.path.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
