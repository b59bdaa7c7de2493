//! The `hct` command line: symmetry scans, transform construction, entropy
//! analysis and staged VQE runs, written as CSV and JSON files.
//!
//! Exit codes: 0 success, 2 usage, 3 input validation, 4 numerical
//! non-convergence.

mod config;

pub use config::{parse_run_config, FamilyKind, RunConfig};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::hct::{
    build_hct, conjugate_by_hct, fine_grid_schedule, scan_symmetries, violation_bound, violation_norm, HctError,
    HctTransform, ThresholdSchedule, MAX_EXACT_NORM_QUBITS,
};
use crate::pauli::{hamiltonian_to_value, Hamiltonian, PauliSum};
use crate::registry::{load_hamiltonian, Registry, RegistryError};
use crate::solver::{
    self, apply_clifford_dagger_to_state, entropy_profile, ground_state_with, mutual_information,
    single_qubit_entropies, LanczosConfig, SolverError,
};
use crate::vqe::{self, bitstring_energy, hct_vqe, parse_pool, Family, OptimizerConfig, VqeConfig, VqeError};

/// Energy window counted as reaching the exact ground energy, in Hartree.
pub const CHEMICAL_PRECISION: f64 = 1.6e-3;
/// Minimum decrease below the reference energy counted as an improvement.
pub const IMPROVEMENT_MARGIN: f64 = 1e-4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<RegistryError> for CliError {
    fn from(e: RegistryError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::NotConverged { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HctError> for CliError {
    fn from(e: HctError) -> Self {
        match e {
            HctError::Solver(s) => s.into(),
            HctError::Schedule(_) => CliError::Usage(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VqeError> for CliError {
    fn from(e: VqeError) -> Self {
        match e {
            VqeError::Solver(s) => s.into(),
            VqeError::Hct(h) => h.into(),
            VqeError::Imaginary(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hct", version, about = "Z2 symmetries, hierarchical Clifford transforms and staged VQE")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symmetry count of the truncated Hamiltonian over a threshold grid.
    Scan(ScanArgs),
    /// Build a transform and report the commutator bounds of its symmetry qubits.
    Build(BuildArgs),
    /// Ground-state entanglement in the original, tapering or transformed frame.
    Entropy(EntropyArgs),
    /// Staged VQE runs described by a configuration file.
    Vqe(VqeArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Hamiltonian JSON file, or a fixture name from the registry.
    #[arg(long)]
    hamiltonian: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    /// Comma-separated decreasing thresholds.
    #[arg(long, conflicts_with = "fine_grid")]
    schedule: Option<String>,
    /// Every distinct coefficient magnitude up to this value.
    #[arg(long)]
    fine_grid: Option<f64>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated thresholds; defaults to every distinct coefficient magnitude.
    #[arg(long, conflicts_with = "fine_grid")]
    grid: Option<String>,
    /// Distinct coefficient magnitudes up to this value.
    #[arg(long)]
    fine_grid: Option<f64>,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    schedule: ScheduleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Original,
    Tapering,
    Hct,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[arg(long, value_enum, default_value = "hct")]
    basis: BasisArg,
    /// Qubit order `i0,i1,...` (entry k is the qubit placed at position k), or
    /// `auto` for symmetry qubits first.
    #[arg(long)]
    perm: Option<String>,
    /// Seed of the eigensolver start vector.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Debug, Args)]
struct VqeArgs {
    /// Run configuration JSON.
    #[arg(long)]
    config: PathBuf,
    /// Run this seed only.
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget per stage.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hct: {e}");
            e.exit_code()
        }
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Scan(a) => cmd_scan(&a),
        Command::Build(a) => cmd_build(&a),
        Command::Entropy(a) => cmd_entropy(&a),
        Command::Vqe(a) => cmd_vqe(&a),
    }
}

/// A file path, or else a registry fixture name.
pub fn resolve_hamiltonian(arg: &str) -> Result<(PathBuf, Hamiltonian), CliError> {
    let p = Path::new(arg);
    if p.exists() {
        return Ok((p.to_path_buf(), load_hamiltonian(p)?));
    }
    let reg = Registry::workspace().map_err(|_| CliError::Input(format!("no such file {arg:?}")))?;
    let path = reg
        .path(arg)
        .map_err(|_| CliError::Input(format!("{arg:?} is neither a file nor a fixture name")))?;
    Ok((path.clone(), load_hamiltonian(&path)?))
}

/// Parses a comma-separated threshold grid; the result is sorted ascending.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let mut v = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let x: f64 = t.parse().map_err(|e| format!("grid entry {t:?}: {e}"))?;
        if !(x >= 0.0 && x.is_finite()) {
            return Err(format!("grid entry {t:?} must be a non-negative number"));
        }
        v.push(x);
    }
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Parses `i0,i1,...` as a permutation of `0..n`.
pub fn parse_permutation(s: &str, n: usize) -> Result<Vec<usize>, String> {
    let perm = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("permutation entry {t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if perm.len() != n {
        return Err(format!("permutation has {} entries, expected {n}", perm.len()));
    }
    let mut seen = vec![false; n];
    for &q in &perm {
        if q >= n || std::mem::replace(&mut seen[q], true) {
            return Err(format!("{s:?} is not a permutation of 0..{n}"));
        }
    }
    Ok(perm)
}

fn schedule_from(args: &ScheduleArgs, h: &PauliSum) -> Result<ThresholdSchedule, CliError> {
    match (&args.schedule, args.fine_grid) {
        (Some(s), _) => ThresholdSchedule::parse(s).map_err(|e| CliError::Usage(e.to_string())),
        (None, Some(e0)) => fine_grid_schedule(h, e0).map_err(|e| CliError::Usage(e.to_string())),
        (None, None) => Ok(ThresholdSchedule::empty()),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_err(&path, e))
}

fn write_json(dir: &Path, name: &str, v: &Value) -> Result<(), CliError> {
    write_file(dir, name, &(serde_json::to_string_pretty(v).expect("serializable") + "\n"))
}

/// Provenance of a command's outputs, written next to them as `manifest.json`.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub parameters: Map<String, Value>,
    pub seed: Option<u64>,
}

impl RunManifest {
    fn new(command: &str, inputs: Vec<PathBuf>, parameters: Value, seed: Option<u64>) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self {
            command: command.into(),
            inputs,
            parameters,
            seed,
        }
    }

    pub fn to_json_value(&self) -> Value {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        json!({
            "command": self.command,
            "inputs": self.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "parameters": self.parameters,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "timestamp": timestamp,
        })
    }

    fn write(&self, dir: &Path) -> Result<(), CliError> {
        write_json(dir, "manifest.json", &self.to_json_value())
    }
}

fn cmd_scan(a: &ScanArgs) -> Result<(), CliError> {
    let (path, ham) = resolve_hamiltonian(&a.common.hamiltonian)?;
    let h = &ham.sum;
    let grid = match (&a.grid, a.fine_grid) {
        (Some(g), _) => parse_grid(g).map_err(CliError::Usage)?,
        (None, Some(e0)) => {
            let mut g = fine_grid_schedule(h, e0)?.thresholds().to_vec();
            g.reverse();
            g
        }
        (None, None) => std::iter::once(0.0).chain(h.distinct_magnitudes()).collect(),
    };
    let mut csv = String::from("epsilon,n_sym,dropped_l1\n");
    for (eps, count) in scan_symmetries(h, &grid)? {
        let dropped: f64 = violation_bound(h, eps) / 2.0;
        writeln!(csv, "{eps:e},{count},{dropped:e}").expect("string write");
    }
    write_file(&a.common.out, "scan.csv", &csv)?;
    RunManifest::new(
        "scan",
        vec![path],
        json!({"grid": a.grid, "fine_grid": a.fine_grid, "points": grid.len()}),
        None,
    )
    .write(&a.common.out)
}

fn cmd_build(a: &BuildArgs) -> Result<(), CliError> {
    let (path, ham) = resolve_hamiltonian(&a.common.hamiltonian)?;
    let h = &ham.sum;
    let schedule = schedule_from(&a.schedule, h)?;
    let t = build_hct(h, &schedule)?;
    let ht = conjugate_by_hct(h, &t)?;
    let exact = h.n() <= MAX_EXACT_NORM_QUBITS;
    let mut csv = String::from("qubit,stage_threshold,commutator_norm,norm_bound,threshold_bound,exact\n");
    let basis = t.cumulative_basis();
    for (&q, sigma) in basis.symmetry_qubits.iter().zip(&basis.sigma_ops) {
        let eps = t.stage_threshold_of(q).expect("qubit belongs to a stage");
        let bound = violation_norm(&ht, sigma, false)?;
        let norm = if exact { violation_norm(&ht, sigma, true)? } else { bound };
        writeln!(csv, "{q},{eps:e},{norm:e},{bound:e},{:e},{exact}", violation_bound(h, eps)).expect("string write");
    }
    write_file(&a.common.out, "bounds.csv", &csv)?;
    write_json(&a.common.out, "hct.json", &t.to_json_value())?;
    let mut meta = ham.metadata.clone();
    meta.insert("transform".into(), Value::String("hct.json".into()));
    write_json(&a.common.out, "transformed.json", &hamiltonian_to_value(&ht, Some(&meta)))?;
    RunManifest::new(
        "build",
        vec![path],
        json!({"schedule": schedule.thresholds(), "counts": t.counts()}),
        None,
    )
    .write(&a.common.out)
}

fn cmd_entropy(a: &EntropyArgs) -> Result<(), CliError> {
    let (path, ham) = resolve_hamiltonian(&a.common.hamiltonian)?;
    let h = &ham.sum;
    let n = h.n();
    let transform: Option<HctTransform> = match a.basis {
        BasisArg::Original => None,
        BasisArg::Tapering => Some(build_hct(h, &ThresholdSchedule::empty())?),
        BasisArg::Hct => Some(build_hct(h, &schedule_from(&a.schedule, h)?)?),
    };
    let perm: Option<Vec<usize>> = match a.perm.as_deref() {
        None => None,
        Some("auto") => Some(transform.as_ref().map(HctTransform::qubit_order).unwrap_or_else(|| (0..n).collect())),
        Some(s) => Some(parse_permutation(s, n).map_err(CliError::Usage)?),
    };
    let cfg = LanczosConfig {
        seed: a.seed,
        ..LanczosConfig::default()
    };
    let g = ground_state_with(h, &cfg)?;
    // C† H C has ground state C† ψ
    let mut psi = match &transform {
        Some(t) => apply_clifford_dagger_to_state(&t.factors(), &g.state),
        None => g.state.clone(),
    };
    if let Some(p) = &perm {
        psi = solver::permute_qubits(&psi, p)?;
    }
    let profile = entropy_profile(&psi)?;
    let mut csv = String::from("cut,entropy\n");
    for (k, s) in profile.iter().enumerate() {
        writeln!(csv, "{},{s:e}", k + 1).expect("string write");
    }
    write_file(&a.common.out, "profile.csv", &csv)?;
    let mi = mutual_information(&psi);
    let mut csv = String::new();
    for row in &mi {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        writeln!(csv, "{}", cells.join(",")).expect("string write");
    }
    write_file(&a.common.out, "mutual_information.csv", &csv)?;
    let mut csv = String::from("qubit,entropy\n");
    for (q, s) in single_qubit_entropies(&psi).iter().enumerate() {
        writeln!(csv, "{q},{s:e}").expect("string write");
    }
    write_file(&a.common.out, "single_qubit.csv", &csv)?;
    let max = profile.iter().copied().fold(0.0, f64::max);
    let basis = format!("{:?}", a.basis).to_lowercase();
    write_json(
        &a.common.out,
        "summary.json",
        &json!({
            "energy": g.energy,
            "residual": g.residual,
            "degenerate": g.degenerate,
            "seed": g.seed,
            "n_qubits": n,
            "basis": basis,
            "permutation": perm,
            "counts": transform.as_ref().map(HctTransform::counts),
            "max_entropy": max,
        }),
    )?;
    RunManifest::new(
        "entropy",
        vec![path],
        json!({"basis": basis, "schedule": a.schedule.schedule, "fine_grid": a.schedule.fine_grid, "perm": a.perm}),
        Some(a.seed),
    )
    .write(&a.common.out)
}

fn cmd_vqe(a: &VqeArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.config).map_err(|e| io_err(&a.config, e))?;
    let base = a.config.parent().unwrap_or(Path::new("."));
    let mut rc = parse_run_config(&text, base).map_err(CliError::Input)?;
    if let Some(s) = a.seed {
        rc.seeds = vec![s];
    }
    if let Some(b) = a.budget {
        if b == 0 {
            return Err(CliError::Usage("budget must be at least 1".into()));
        }
        rc.budget = b;
    }
    let ham = load_hamiltonian(&rc.hamiltonian)?;
    let h = &ham.sum;
    let hf = ham
        .meta_str("hf_bitstring")
        .ok_or_else(|| CliError::Input("Hamiltonian metadata lacks \"hf_bitstring\"".into()))?
        .to_string();
    let family = match rc.family {
        FamilyKind::Hwe => Family::HardwareEfficient {
            depth: rc.depth,
            rotations: rc.rotations,
        },
        FamilyKind::Pool => {
            let p = rc.pool.as_ref().expect("validated");
            let text = fs::read_to_string(p).map_err(|e| io_err(p, e))?;
            Family::Pool(parse_pool(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?)
        }
    };
    let hf_energy = bitstring_energy(h, &hf)?;
    let exact = match ham.meta_f64("exact_energy") {
        Some(e) => e,
        None => ground_state_with(h, &LanczosConfig::default())?.energy,
    };
    let mut trajectory = String::from("seed,stage,eval,energy\n");
    let mut runs = Vec::new();
    for &seed in &rc.seeds {
        let mut cfg = VqeConfig::new(
            family.clone(),
            rc.basis,
            rc.schedule.clone(),
            OptimizerConfig::new(rc.method, rc.budget),
        );
        cfg.warm_start = rc.warm_start;
        cfg.seed = seed;
        cfg.noise_std = rc.noise_std;
        let run = hct_vqe(h, &hf, &cfg)?;
        for p in &run.trajectory {
            writeln!(trajectory, "{seed},{},{},{:e}", p.stage, p.eval, p.energy).expect("string write");
        }
        if rc.dump_state {
            let psi = run.final_state()?;
            let mut csv = String::from("index,re,im\n");
            for (i, c) in psi.amplitudes().iter().enumerate() {
                writeln!(csv, "{i},{:e},{:e}", c.re, c.im).expect("string write");
            }
            write_file(&a.out, &format!("state_seed{seed}.csv"), &csv)?;
        }
        runs.push(run_summary(&run, hf_energy, exact));
    }
    write_file(&a.out, "trajectory.csv", &trajectory)?;
    let count = |key: &str| runs.iter().filter(|r| r[key] == Value::Bool(true)).count();
    let summary = json!({
        "exact_energy": exact,
        "hf_energy": hf_energy,
        "n_runs": runs.len(),
        "n_chemical_precision": count("chemical_precision"),
        "n_improved_over_hf": count("improved_over_hf"),
        "runs": runs,
    });
    write_json(&a.out, "summary.json", &summary)?;
    RunManifest::new(
        "vqe",
        [Some(a.config.clone()), Some(rc.hamiltonian.clone()), rc.pool.clone()].into_iter().flatten().collect(),
        json!({
            "schedule": rc.schedule.thresholds(),
            "basis": format!("{:?}", rc.basis).to_lowercase(),
            "warm_start": rc.warm_start,
            "family": format!("{:?}", rc.family).to_lowercase(),
            "depth": rc.depth,
            "rotations": format!("{:?}", rc.rotations).to_lowercase(),
            "optimizer": rc.method.to_string(),
            "seeds": rc.seeds,
            "budget": rc.budget,
            "noise_std": rc.noise_std,
        }),
        rc.seeds.first().copied(),
    )
    .write(&a.out)
}

fn run_summary(run: &vqe::VqeRun, hf_energy: f64, exact: f64) -> Value {
    let stages: Vec<Value> = run
        .stages
        .iter()
        .map(|s| {
            json!({
                "stage": s.stage,
                "threshold": s.threshold,
                "symmetry_qubits": s.symmetry_qubits,
                "n_params": s.n_params,
                "initial_energy": s.initial_energy,
                "energy": s.energy,
                "evals": s.evals,
                "converged": s.converged,
                "error": s.error,
            })
        })
        .collect();
    json!({
        "seed": run.seed,
        "final_energy": run.final_energy,
        "error": run.final_energy - exact,
        "chemical_precision": (run.final_energy - exact).abs() <= CHEMICAL_PRECISION,
        "improved_over_hf": run.final_energy < hf_energy - IMPROVEMENT_MARGIN,
        "evals": run.trajectory.len(),
        "stages": stages,
    })
}
