//! Noiseless statevector VQE over a sequence of truncated, Clifford-transformed
//! Hamiltonians, with each stage warm-started from the previous optimum.

mod circuit;
mod optimize;
mod pool;

pub use circuit::{
    apply_exponential, build_hwe_ansatz, build_pool_ansatz, embed_parameters, energy, AnsatzCircuit, Gate, GateKey,
    GateKind, Prelude, Rotations,
};
pub use optimize::{optimize, Method, OptimizerConfig, Optimum};
pub use pool::{filter_pool, parse_pool, Pool, PoolElement};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::hct::{build_hct, HctError, HctTransform, ThresholdSchedule};
use crate::pauli::{PauliError, PauliSum};
use crate::solver::{apply_clifford_to_state, CompiledSum, SolverError, Statevector};
use crate::symmetry::{conjugate_sum, SymmetryError};

/// Largest register the VQE driver accepts.
pub const MAX_VQE_QUBITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VqeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Hct(#[from] HctError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("expected {expected} parameters, got {got}")]
    Parameters { expected: usize, got: usize },
    #[error("invalid circuit: {0}")]
    Structure(String),
    #[error("cannot embed parameters: {0}")]
    Embedding(String),
    #[error("energy has imaginary residue {0:e}")]
    Imaginary(f64),
    #[error("invalid VQE configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    HardwareEfficient { depth: usize, rotations: Rotations },
    /// Operator pool given in the original qubit basis.
    Pool(Pool),
}

/// Frame in which the variational problem is posed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqeBasis {
    /// The bare Hamiltonian, no symmetry rotations.
    Original,
    /// `C† H C` for the transform built from the schedule. An empty schedule
    /// gives the exact-symmetry (tapering) frame.
    Hct,
}

#[derive(Debug, Clone)]
pub struct VqeConfig {
    pub family: Family,
    pub basis: VqeBasis,
    pub schedule: ThresholdSchedule,
    /// Run one stage per threshold; otherwise only the final `ε = 0` stage.
    pub warm_start: bool,
    pub optimizer: OptimizerConfig,
    pub seed: u64,
    /// Standard deviation of the normal noise added to the first stage's angles.
    pub noise_std: f64,
}

impl VqeConfig {
    pub fn new(family: Family, basis: VqeBasis, schedule: ThresholdSchedule, optimizer: OptimizerConfig) -> Self {
        Self {
            family,
            basis,
            schedule,
            warm_start: true,
            optimizer,
            seed: 0,
            noise_std: 0.1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub stage: usize,
    pub threshold: f64,
    pub symmetry_qubits: Vec<usize>,
    pub n_params: usize,
    pub initial_energy: f64,
    pub energy: f64,
    pub evals: usize,
    pub converged: bool,
    pub params: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub stage: usize,
    /// Evaluation index counted across all stages, from 1.
    pub eval: usize,
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct VqeRun {
    pub thresholds: Vec<f64>,
    pub transform: Option<HctTransform>,
    pub stages: Vec<StageResult>,
    pub trajectory: Vec<TrajectoryPoint>,
    pub circuit: AnsatzCircuit,
    pub final_energy: f64,
    pub final_params: Vec<f64>,
    pub seed: u64,
}

impl VqeRun {
    /// The optimized state in the transformed frame.
    pub fn transformed_state(&self) -> Result<Statevector, VqeError> {
        self.circuit.state(&self.final_params)
    }

    /// `C |ψ_N>`, the optimized state in the original frame.
    pub fn final_state(&self) -> Result<Statevector, VqeError> {
        let psi = self.transformed_state()?;
        Ok(match &self.transform {
            Some(t) => apply_clifford_to_state(&t.factors(), &psi),
            None => psi,
        })
    }
}

/// `<bits|H|bits>`.
pub fn bitstring_energy(h: &PauliSum, bits: &str) -> Result<f64, VqeError> {
    let psi = Statevector::from_bitstring(bits)?;
    if psi.n() != h.n() {
        return Err(VqeError::Config(format!("bitstring has {} bits, Hamiltonian {} qubits", psi.n(), h.n())));
    }
    energy(&psi, &CompiledSum::new(h)?)
}

/// The stage sequence of a run: frame, transformed Hamiltonian, preparation
/// and the circuit family.
#[derive(Debug, Clone)]
pub struct VqeProblem {
    thresholds: Vec<f64>,
    transform: Option<HctTransform>,
    transformed: PauliSum,
    prelude: Prelude,
    start: Statevector,
    family: Family,
    /// Pool conjugated into the frame.
    pool: Option<Pool>,
}

impl VqeProblem {
    pub fn new(h: &PauliSum, hf: &str, cfg: &VqeConfig) -> Result<Self, VqeError> {
        let n = h.n();
        if n > MAX_VQE_QUBITS {
            return Err(VqeError::Config(format!("{n} qubits exceeds the limit of {MAX_VQE_QUBITS}")));
        }
        if hf.chars().count() != n {
            return Err(VqeError::Config(format!("reference bitstring {hf:?} does not have {n} bits")));
        }
        if let Family::Pool(p) = &cfg.family {
            if p.n() != n {
                return Err(VqeError::Config(format!("pool acts on {} qubits, Hamiltonian {n}", p.n())));
            }
        }
        let (transform, transformed, mut thresholds) = match cfg.basis {
            VqeBasis::Original => (None, h.clone(), Vec::new()),
            VqeBasis::Hct => {
                let t = build_hct(h, &cfg.schedule)?;
                let ht = conjugate_sum(h, &t.factors())?;
                let eps = if cfg.warm_start {
                    cfg.schedule.thresholds().to_vec()
                } else {
                    Vec::new()
                };
                (Some(t), ht, eps)
            }
        };
        thresholds.push(0.0);
        let factors = transform.as_ref().map(HctTransform::factors).unwrap_or_default();
        let pool = match &cfg.family {
            Family::Pool(p) => Some(p.conjugate(&factors)?),
            Family::HardwareEfficient { .. } => None,
        };
        let prelude = Prelude::new(hf, factors);
        let start = prelude.state()?;
        Ok(Self {
            thresholds,
            transform,
            transformed,
            prelude,
            start,
            family: cfg.family.clone(),
            pool,
        })
    }

    pub fn n(&self) -> usize {
        self.transformed.n()
    }

    /// Stage thresholds, ending with 0.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn transform(&self) -> Option<&HctTransform> {
        self.transform.as_ref()
    }

    /// `C† H C` (or `H` in the original frame).
    pub fn transformed(&self) -> &PauliSum {
        &self.transformed
    }

    /// The prepared state `C† |hf>`.
    pub fn start(&self) -> &Statevector {
        &self.start
    }

    pub fn symmetry_qubits(&self, stage: usize) -> Vec<usize> {
        self.transform
            .as_ref()
            .map(|t| t.qubits_upto(self.thresholds[stage]))
            .unwrap_or_default()
    }

    /// Truncated transformed Hamiltonian of `stage`.
    pub fn hamiltonian(&self, stage: usize) -> Result<PauliSum, VqeError> {
        Ok(self.transformed.truncate(self.thresholds[stage])?)
    }

    /// Circuit of `stage`. Pool circuits keep the sector rotations of the first
    /// stage throughout and use the elements that commute with the stage's σ ops.
    pub fn circuit(&self, stage: usize) -> Result<AnsatzCircuit, VqeError> {
        let sym = self.symmetry_qubits(stage);
        match (&self.family, &self.pool) {
            (Family::HardwareEfficient { depth, rotations }, _) => {
                build_hwe_ansatz(self.n(), &sym, *depth, *rotations, self.prelude.clone())
            }
            (Family::Pool(_), Some(p)) => {
                let active: Vec<(usize, PauliSum)> = filter_pool(p, &sym)
                    .into_iter()
                    .map(|k| (k, p.elements()[k].operator.clone()))
                    .collect();
                build_pool_ansatz(self.n(), &self.symmetry_qubits(0), &active, self.prelude.clone())
            }
            (Family::Pool(_), None) => unreachable!("pool is conjugated on construction"),
        }
    }
}

/// Runs the staged VQE from `C† |hf>`.
pub fn hct_vqe(h: &PauliSum, hf: &str, cfg: &VqeConfig) -> Result<VqeRun, VqeError> {
    let problem = VqeProblem::new(h, hf, cfg)?;
    let start = problem.start();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stages: Vec<StageResult> = Vec::new();
    let mut trajectory = Vec::new();
    let mut prev: Option<(AnsatzCircuit, Vec<f64>)> = None;
    for (m, &eps) in problem.thresholds().iter().enumerate() {
        let sym = problem.symmetry_qubits(m);
        let mut circuit = problem.circuit(m)?;
        let x0 = match &prev {
            Some((pc, pp)) => embed_parameters(pc, pp, &mut circuit, m)?,
            None => {
                let noise = Normal::new(0.0, cfg.noise_std.max(0.0)).map_err(|e| VqeError::Config(e.to_string()))?;
                (0..circuit.n_params()).map(|_| noise.sample(&mut rng)).collect()
            }
        };
        let hm = CompiledSum::new(&problem.hamiltonian(m)?)?;
        let mut failure: Option<VqeError> = None;
        let objective = |x: &[f64]| match circuit.state_from(start, x).and_then(|s| energy(&s, &hm)) {
            Ok(e) => e,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        };
        let opt = optimize(objective, &x0, &cfg.optimizer)?;
        let base = trajectory.len();
        trajectory.extend(opt.trajectory.iter().enumerate().map(|(i, &e)| TrajectoryPoint {
            stage: m,
            eval: base + i + 1,
            energy: e,
        }));
        stages.push(StageResult {
            stage: m,
            threshold: eps,
            symmetry_qubits: sym,
            n_params: circuit.n_params(),
            initial_energy: opt.trajectory[0],
            energy: opt.value,
            evals: opt.evals,
            converged: opt.converged && failure.is_none(),
            params: opt.params.clone(),
            error: failure.map(|e| e.to_string()),
        });
        prev = Some((circuit, opt.params));
    }
    let (circuit, final_params) = prev.expect("at least one stage");
    let final_energy = stages.last().expect("at least one stage").energy;
    Ok(VqeRun {
        thresholds: problem.thresholds().to_vec(),
        transform: problem.transform().cloned(),
        stages,
        trajectory,
        circuit,
        final_energy,
        final_params,
        seed: cfg.seed,
    })
}
