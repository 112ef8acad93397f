//! Argument definitions and command dispatch for the `ccc` binary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use ccc_core::ccc::{
    classify, dense_distribution, is_clifford_single_qubit, CaseTag, CccError, CccInstance, ClassificationVerdict,
    ComplexityClass, EasyReduction, ExactAngle, MarginalSimulator, OutcomeDistribution, UnitaryDecomposition,
};
use ccc_core::experiments::{markov_set_audit, parse_rational, supremacy_parameters, ExperimentError, MarkovAudit};
use ccc_core::gadgets::{
    build_gadget_i, build_gadget_j, compile_word, gadget_action, ActionClass, CompiledWord, Gadget, GadgetAction,
    GadgetError, DEFAULT_BEAM_WIDTH, DEFAULT_SAMPLED_BUDGET,
};
use ccc_core::linalg::{gates, ComplexMatrix, LinalgError, DEFAULT_DENSE_CAP};
use ccc_core::mbqc::{
    cz_between_gadget_wires, g_closed_form, g_gadget, rotation_angle, universality_check, MbqcError,
    UniversalityVerdict,
};
use ccc_core::{BitString, Complex64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formats::{parse_circuit, parse_gadget, parse_unitary, FormatError, UnitarySpec};
use crate::parallel::{anticoncentration_parallel, search_gadgets_parallel};
use crate::report::envelope;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Refused(_) => EXIT_REFUSED,
            CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

fn cap_refusal(n: usize, cap: usize) -> CliError {
    CliError::Refused(format!("{n} qubits exceeds the dense simulation cap of {cap} (set CCC_DENSE_CAP to raise it)"))
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::DenseCapExceeded { n, cap } => cap_refusal(n, cap),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<CccError> for CliError {
    fn from(e: CccError) -> Self {
        match e {
            CccError::Linalg(l) => l.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Linalg(l) => l.into(),
            ExperimentError::Ccc(c) => c.into(),
            e @ (ExperimentError::OutOfRange { .. }
            | ExperimentError::BadRational(_)
            | ExperimentError::TooFewSamples { .. }
            | ExperimentError::OutcomeWidth { .. }) => CliError::Parse(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<GadgetError> for CliError {
    fn from(e: GadgetError) -> Self {
        match e {
            GadgetError::Linalg(l) => l.into(),
            e @ (GadgetError::SearchWidth(_) | GadgetError::TooWide { .. } | GadgetError::WordTooLong(_)) => {
                CliError::Refused(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<MbqcError> for CliError {
    fn from(e: MbqcError) -> Self {
        match e {
            MbqcError::InexactAngle => CliError::Parse(format!("{e}; write the angle as pi*p/q")),
            MbqcError::Linalg(l) => l.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ccc",
    version,
    about = "Conjugated Clifford circuits: classification, simulation, gadgets and experiments"
)]
pub struct Cli {
    /// Largest qubit count for dense statevector work.
    #[arg(long, global = true, env = "CCC_DENSE_CAP", default_value_t = DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify U by the weak-simulation complexity of U-conjugated circuits.
    Classify(ClassifyArgs),
    /// Exact output probabilities of a conjugated circuit.
    Simulate(SimulateArgs),
    /// Sample output strings of a conjugated circuit.
    Sample(SampleArgs),
    /// Single-qubit marginals without dense simulation.
    Marginal(MarginalArgs),
    /// Postselection gadgets.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Anticoncentration Monte Carlo over uniformly random Cliffords.
    Anticonc(AnticoncArgs),
    /// Exact supremacy parameter arithmetic.
    Params(ParamsArgs),
    /// Markov-set audit of a simulator against the dense distribution.
    Audit(AuditArgs),
    /// Measurement-based gadget checks.
    #[command(subcommand)]
    Mbqc(MbqcCommand),
    /// Approximate a single-qubit target by a word over generators.
    Compile(CompileArgs),
}

#[derive(Subcommand, Debug)]
pub enum GadgetCommand {
    /// Contract a gadget and report its action.
    Analyze(AnalyzeArgs),
    /// Search for unitary non-Clifford gadgets.
    Search(SearchArgs),
}

#[derive(Subcommand, Debug)]
pub enum MbqcCommand {
    /// Universality verdict, rotation cosines and contraction residuals.
    Check(MbqcCheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    /// Unitary spec: gate name, `rz=A rx=B rz=C`, or 8 reals.
    #[arg(long)]
    pub u: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    /// Circuit file.
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub u: String,
    /// Report only this outcome.
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub u: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug, Serialize)]
pub struct MarginalArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub u: String,
    /// Only this qubit; all qubits otherwise.
    #[arg(long)]
    pub qubit: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Builtin {
    #[value(name = "I")]
    I,
    #[value(name = "J")]
    J,
}

#[derive(Args, Debug, Serialize)]
pub struct AnalyzeArgs {
    /// Built-in gadget for `U = Rz(phi) Rx(theta)`.
    #[arg(long, value_enum, ignore_case = true, conflicts_with = "file")]
    pub builtin: Option<Builtin>,
    #[arg(long, default_value = "0")]
    pub phi: String,
    #[arg(long)]
    pub theta: Option<String>,
    /// Gadget description file; needs `--u`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub u: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub u: String,
    /// Gadget width: 2 (exhaustive) or 3 (sampled).
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Clifford classes sampled when k = 3.
    #[arg(long, default_value_t = DEFAULT_SAMPLED_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct AnticoncArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "rz=pi*1/5 rx=pi*1/3")]
    pub u: String,
    /// Target outcome; all zeros by default.
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long, default_value_t = 0.2)]
    pub a: f64,
    /// Also write the raw p values, one per line, to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ParamsArgs {
    /// Decimal or p/q.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub c: String,
    #[arg(long)]
    pub eps: String,
}

#[derive(Args, Debug, Serialize)]
pub struct AuditArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub u: String,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    /// Audit an empirical distribution of this many samples. Without it an
    /// easy U is audited through its exact stabilizer distribution.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct MbqcCheckArgs {
    /// Exact angle, e.g. `pi*1/6`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: String,
}

#[derive(Args, Debug, Serialize)]
pub struct CompileArgs {
    #[arg(long)]
    pub target: String,
    /// Generator: a unitary spec, or `I(phi,theta)` / `J(phi,theta)` for a
    /// normalized built-in gadget action. Repeatable.
    #[arg(long = "gen")]
    pub generators: Vec<String>,
    #[arg(long, default_value_t = 8)]
    pub max_length: usize,
    #[arg(long, default_value_t = DEFAULT_BEAM_WIDTH)]
    pub beam: usize,
}

/// Default generators for `compile`.
pub const DEFAULT_GENERATORS: [&str; 3] = ["H", "S", "J(0,pi*1/3)"];

/// Runs a parsed command and returns what it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let cap = cli.dense_cap;
    match &cli.command {
        Command::Classify(a) => cmd_classify(a, cap),
        Command::Simulate(a) => cmd_simulate(a, cap),
        Command::Sample(a) => cmd_sample(a, cap),
        Command::Marginal(a) => cmd_marginal(a, cap),
        Command::Gadget(GadgetCommand::Analyze(a)) => cmd_gadget_analyze(a, cap),
        Command::Gadget(GadgetCommand::Search(a)) => cmd_gadget_search(a, cap),
        Command::Anticonc(a) => cmd_anticonc(a, cap),
        Command::Params(a) => cmd_params(a, cap),
        Command::Audit(a) => cmd_audit(a, cap),
        Command::Mbqc(MbqcCommand::Check(a)) => cmd_mbqc_check(a, cap),
        Command::Compile(a) => cmd_compile(a, cap),
    }
}

#[derive(Serialize)]
struct Config<'a, A: Serialize> {
    dense_cap: usize,
    #[serde(flatten)]
    args: &'a A,
}

fn emit<A: Serialize, R: Serialize>(
    command: &str,
    args: &A,
    cap: usize,
    seed: Option<u64>,
    result: &R,
) -> Result<String, CliError> {
    Ok(envelope(command, &Config { dense_cap: cap, args }, seed, result)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Failed(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(circuit: &Path, u: &str) -> Result<(UnitarySpec, CccInstance), CliError> {
    let v = parse_circuit(&read_file(circuit)?).map_err(|e| CliError::Parse(format!("{}: {e}", circuit.display())))?;
    let u = parse_unitary(u)?;
    let inst = CccInstance::from_decomposition(u.decomposition, v);
    Ok((u, inst))
}

fn parse_angle(name: &str, s: &str) -> Result<ExactAngle, CliError> {
    s.parse().map_err(|e| CliError::Parse(format!("--{name}: {e}")))
}

fn parse_bits(name: &str, s: &str, n: usize) -> Result<BitString, CliError> {
    let y: BitString = s.parse().map_err(|_| CliError::Parse(format!("--{name}: {s:?} is not a bitstring")))?;
    if y.len() != n {
        return Err(CliError::Parse(format!("--{name} has {} bits, expected {n}", y.len())));
    }
    Ok(y)
}

#[derive(Serialize)]
struct ClassifyResult {
    decomposition: UnitaryDecomposition,
    #[serde(flatten)]
    verdict: ClassificationVerdict,
    is_clifford: bool,
}

fn cmd_classify(args: &ClassifyArgs, cap: usize) -> Result<String, CliError> {
    let u = parse_unitary(&args.u)?;
    let result = ClassifyResult {
        decomposition: u.decomposition,
        verdict: classify(&u.decomposition),
        is_clifford: is_clifford_single_qubit(&u.matrix),
    };
    emit("classify", args, cap, None, &result)
}

#[derive(Serialize)]
struct Outcome {
    y: String,
    p: f64,
}

#[derive(Serialize)]
struct SimulateResult {
    method: &'static str,
    n: usize,
    case: CaseTag,
    class: ComplexityClass,
    /// Outcomes with nonzero probability, in lexicographic order.
    outcomes: Vec<Outcome>,
}

/// Below this a probability is reported as an exact zero.
const ZERO_PROBABILITY: f64 = 1e-15;

fn exact_distribution(inst: &CccInstance, cap: usize) -> Result<(&'static str, OutcomeDistribution), CliError> {
    let n = inst.num_qubits();
    if n > cap {
        return Err(cap_refusal(n, cap));
    }
    if inst.classify().class == ComplexityClass::Pweak {
        let pairs = EasyReduction::new(inst)?.exact_distribution();
        Ok(("stabilizer", OutcomeDistribution::from_pairs(n, &pairs, cap)?))
    } else {
        Ok(("dense", dense_distribution(inst, cap)?))
    }
}

fn cmd_simulate(args: &SimulateArgs, cap: usize) -> Result<String, CliError> {
    let (_, inst) = load_instance(&args.circuit, &args.u)?;
    let n = inst.num_qubits();
    let only = args.y.as_deref().map(|s| parse_bits("y", s, n)).transpose()?;
    let (method, dist) = exact_distribution(&inst, cap)?;
    let outcomes = match only {
        Some(y) => vec![Outcome { y: y.to_string(), p: dist.get(&y) }],
        None => dist
            .probabilities()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > ZERO_PROBABILITY)
            .map(|(i, &p)| Outcome { y: BitString::from_index(i, n).to_string(), p })
            .collect(),
    };
    let verdict = inst.classify();
    let result = SimulateResult { method, n, case: verdict.case, class: verdict.class, outcomes };
    emit("simulate", args, cap, None, &result)
}

/// Draws `count` outcomes: the stabilizer path for easy `U`, dense sampling
/// otherwise (refused above the cap).
pub fn draw_samples(
    inst: &CccInstance,
    count: usize,
    seed: u64,
    cap: usize,
) -> Result<(&'static str, Vec<BitString>), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = inst.num_qubits();
    if inst.classify().class == ComplexityClass::Pweak {
        let reduction = EasyReduction::new(inst)?;
        return Ok(("stabilizer", (0..count).map(|_| reduction.sample(&mut rng)).collect()));
    }
    if n > cap {
        return Err(CliError::Refused(format!(
            "U is PH_SUPREME and {n} qubits exceeds the dense simulation cap of {cap} (set CCC_DENSE_CAP to raise it)"
        )));
    }
    let dist = dense_distribution(inst, cap)?;
    let weights = WeightedIndex::new(dist.probabilities()).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(("dense", (0..count).map(|_| BitString::from_index(weights.sample(&mut rng), n)).collect()))
}

#[derive(Serialize)]
struct SampleResult {
    method: &'static str,
    n: usize,
    case: CaseTag,
    class: ComplexityClass,
    num_samples: usize,
    counts: BTreeMap<String, usize>,
}

fn cmd_sample(args: &SampleArgs, cap: usize) -> Result<String, CliError> {
    let (_, inst) = load_instance(&args.circuit, &args.u)?;
    let (method, samples) = draw_samples(&inst, args.samples, args.seed, cap)?;
    if args.format == OutputFormat::Csv {
        let mut out = String::from("y\n");
        for s in &samples {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        return Ok(out);
    }
    let mut counts = BTreeMap::new();
    for s in &samples {
        *counts.entry(s.to_string()).or_insert(0) += 1;
    }
    let verdict = inst.classify();
    let result = SampleResult {
        method,
        n: inst.num_qubits(),
        case: verdict.case,
        class: verdict.class,
        num_samples: samples.len(),
        counts,
    };
    emit("sample", args, cap, Some(args.seed), &result)
}

#[derive(Serialize)]
struct MarginalResult {
    n: usize,
    /// `P(y_j = 0)` for each reported qubit.
    marginals: BTreeMap<usize, f64>,
}

fn cmd_marginal(args: &MarginalArgs, cap: usize) -> Result<String, CliError> {
    let (_, inst) = load_instance(&args.circuit, &args.u)?;
    let sim = MarginalSimulator::new(&inst);
    let qubits: Vec<usize> = match args.qubit {
        Some(j) => vec![j],
        None => (0..inst.num_qubits()).collect(),
    };
    let marginals = qubits
        .into_iter()
        .map(|j| {
            sim.marginal(j).map(|p| (j, p)).map_err(|e| match e {
                CccError::QubitOutOfRange { .. } => CliError::Parse(e.to_string()),
                e => e.into(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    emit("marginal", args, cap, None, &MarginalResult { n: inst.num_qubits(), marginals })
}

#[derive(Serialize)]
struct AnalyzeResult {
    gadget: Gadget,
    #[serde(flatten)]
    action: GadgetAction,
    class: ActionClass,
    /// Unit-determinant action, when the action is unitary.
    normalized: Option<ComplexMatrix>,
}

fn builtin_gadget(which: Builtin, phi: ExactAngle, theta: ExactAngle) -> Gadget {
    match which {
        Builtin::I => build_gadget_i(phi, theta),
        Builtin::J => build_gadget_j(phi, theta),
    }
}

fn cmd_gadget_analyze(args: &AnalyzeArgs, cap: usize) -> Result<String, CliError> {
    let gadget = match (&args.builtin, &args.file) {
        (Some(which), None) => {
            let theta = args.theta.as_deref().ok_or_else(|| CliError::Parse("--builtin needs --theta".into()))?;
            builtin_gadget(*which, parse_angle("phi", &args.phi)?, parse_angle("theta", theta)?)
        }
        (None, Some(path)) => {
            let spec = args.u.as_deref().ok_or_else(|| CliError::Parse("--file needs --u".into()))?;
            let u = parse_unitary(spec)?;
            parse_gadget(&read_file(path)?, &u.matrix)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
        }
        _ => return Err(CliError::Parse("give exactly one of --builtin or --file".into())),
    };
    let action = gadget_action(&gadget)?;
    let normalized = if action.is_unitary { action.normalized().ok() } else { None };
    let result = AnalyzeResult { gadget, class: action.class(), action, normalized };
    emit("gadget analyze", args, cap, None, &result)
}

fn cmd_gadget_search(args: &SearchArgs, cap: usize) -> Result<String, CliError> {
    let u = parse_unitary(&args.u)?;
    let report = search_gadgets_parallel(&u.matrix, args.k, args.budget, args.seed)?;
    emit("gadget search", args, cap, Some(args.seed), &report)
}

fn cmd_anticonc(args: &AnticoncArgs, cap: usize) -> Result<String, CliError> {
    let u = parse_unitary(&args.u)?;
    let y = match &args.y {
        Some(s) => parse_bits("y", s, args.n)?,
        None => BitString::zeros(args.n),
    };
    let report = anticoncentration_parallel(args.n, &u.matrix, &y, args.samples, args.a, args.seed, cap)?;
    if let Some(path) = &args.csv {
        let mut text = String::new();
        for p in &report.p_values {
            text.push_str(&format!("{p:e}\n"));
        }
        fs::write(path, text).map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?;
    }
    emit("anticonc", args, cap, Some(args.seed), &report)
}

fn cmd_params(args: &ParamsArgs, cap: usize) -> Result<String, CliError> {
    let p = supremacy_parameters(parse_rational(&args.a)?, parse_rational(&args.c)?, parse_rational(&args.eps)?)?;
    emit("params", args, cap, None, &p)
}

#[derive(Serialize)]
struct AuditResult {
    approx_source: &'static str,
    #[serde(flatten)]
    audit: MarkovAudit,
}

fn cmd_audit(args: &AuditArgs, cap: usize) -> Result<String, CliError> {
    let (_, inst) = load_instance(&args.circuit, &args.u)?;
    let n = inst.num_qubits();
    if n > cap {
        return Err(cap_refusal(n, cap));
    }
    let exact = dense_distribution(&inst, cap)?;
    let easy = inst.classify().class == ComplexityClass::Pweak;
    let (source, approx, seed) = match (args.samples, easy) {
        (None, true) => {
            let pairs = EasyReduction::new(&inst)?.exact_distribution();
            ("stabilizer exact", OutcomeDistribution::from_pairs(n, &pairs, cap)?, None)
        }
        (samples, _) => {
            let count = samples.unwrap_or(10_000);
            let (method, draws) = draw_samples(&inst, count, args.seed, cap)?;
            let source = if method == "stabilizer" { "stabilizer samples" } else { "dense samples" };
            (source, OutcomeDistribution::from_samples(n, &draws, cap)?, Some(args.seed))
        }
    };
    let audit = markov_set_audit(&exact, &approx, args.c)?;
    emit("audit", args, cap, seed, &AuditResult { approx_source: source, audit })
}

/// `max |a/‖a‖ − e^{iχ} b/‖b‖|` with the best phase `χ`.
pub fn phase_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let norm = |m: &ComplexMatrix| m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let (na, nb) = (norm(a), norm(b));
    let inner: Complex64 = a.entries().iter().zip(b.entries()).map(|(x, y)| y.conj() * x).sum();
    let phase = if inner.norm() > 0.0 { inner / inner.norm() } else { Complex64::new(1.0, 0.0) };
    let a = a.scale(Complex64::new(1.0 / na, 0.0));
    let b = b.scale(phase / nb);
    a.max_abs_diff(&b).unwrap_or(f64::INFINITY)
}

#[derive(Serialize)]
struct GateCheck {
    gate: &'static str,
    postselect_bit: u8,
    /// `cos φ` read from the closed-form gate.
    cos_angle: f64,
    /// `−(1 + cos 2θ)/2` for G0 and `(cos 2θ − 1)/2` for G1.
    cos_angle_formula: f64,
    angle: f64,
    half_angle_cos_raw: f64,
    axis: Option<[f64; 3]>,
    contraction_residual: f64,
}

#[derive(Serialize)]
struct MbqcResult {
    #[serde(flatten)]
    verdict: UniversalityVerdict,
    gates: Vec<GateCheck>,
    cz_residual: f64,
}

fn cmd_mbqc_check(args: &MbqcCheckArgs, cap: usize) -> Result<String, CliError> {
    let theta = parse_angle("theta", &args.theta)?;
    let verdict = universality_check(theta)?;
    let t = theta.radians();
    let c2 = (2.0 * t).cos();
    let mut checks = Vec::new();
    for (bit, name, formula) in [(false, "G0", -(1.0 + c2) / 2.0), (true, "G1", (c2 - 1.0) / 2.0)] {
        let closed = g_closed_form(t, bit);
        let rot = rotation_angle(&closed)?;
        checks.push(GateCheck {
            gate: name,
            postselect_bit: bit as u8,
            cos_angle: rot.cos_angle(),
            cos_angle_formula: formula,
            angle: rot.angle,
            half_angle_cos_raw: rot.half_angle_cos_raw,
            axis: rot.axis,
            contraction_residual: phase_residual(&g_gadget(theta, bit)?, &closed),
        });
    }
    let cz_residual = phase_residual(&cz_between_gadget_wires(t)?, &gates::cz());
    emit("mbqc check", args, cap, None, &MbqcResult { verdict, gates: checks, cz_residual })
}

/// A generator for `compile`: a unitary spec, or `I(phi,theta)` /
/// `J(phi,theta)` for the normalized action of a built-in gadget.
pub fn parse_generator(spec: &str) -> Result<ComplexMatrix, CliError> {
    let s = spec.trim();
    let lower = s.to_ascii_lowercase();
    let builtin = match lower.as_bytes().first() {
        Some(b'i') if lower.starts_with("i(") => Some(Builtin::I),
        Some(b'j') if lower.starts_with("j(") => Some(Builtin::J),
        _ => None,
    };
    let Some(which) = builtin else {
        return Ok(parse_unitary(s)?.matrix);
    };
    let inner = s[2..].strip_suffix(')').ok_or_else(|| CliError::Parse(format!("generator {spec:?}: missing ')'")))?;
    let (phi, theta) =
        inner.split_once(',').ok_or_else(|| CliError::Parse(format!("generator {spec:?}: expected two angles")))?;
    let action = gadget_action(&builtin_gadget(which, parse_angle("gen", phi)?, parse_angle("gen", theta)?))?;
    if !action.is_unitary {
        return Err(CliError::Parse(format!("generator {spec:?}: gadget action is not unitary")));
    }
    Ok(action.normalized()?)
}

#[derive(Serialize)]
struct CompileResult {
    generators: Vec<String>,
    /// The word as generator labels, leftmost factor first.
    word_labels: Vec<String>,
    #[serde(flatten)]
    compiled: CompiledWord,
}

fn cmd_compile(args: &CompileArgs, cap: usize) -> Result<String, CliError> {
    let labels: Vec<String> = if args.generators.is_empty() {
        DEFAULT_GENERATORS.iter().map(|s| s.to_string()).collect()
    } else {
        args.generators.clone()
    };
    let gens = labels.iter().map(|s| parse_generator(s)).collect::<Result<Vec<_>, _>>()?;
    let target = parse_unitary(&args.target)?;
    let compiled = compile_word(&target.matrix, &gens, args.max_length, args.beam)?;
    let word_labels = compiled.word.iter().map(|&i| labels[i].clone()).collect();
    emit("compile", args, cap, None, &CompileResult { generators: labels, word_labels, compiled })
}
