mod common;

use common::*;
use hct_core::hct::ThresholdSchedule;
use hct_core::solver::lowest_eigenvalue;
use hct_core::vqe::{
    bitstring_energy, hct_vqe, parse_pool, Family, Method, OptimizerConfig, Rotations, VqeBasis, VqeConfig, VqeProblem,
};

fn lih(name: &str) -> (hct_core::pauli::Hamiltonian, String) {
    let h = registry().hamiltonian(name).unwrap();
    let hf = h.meta_str("hf_bitstring").unwrap().to_string();
    (h, hf)
}

fn hwe(basis: VqeBasis, schedule: &[f64], budget: usize) -> VqeConfig {
    VqeConfig::new(
        Family::HardwareEfficient { depth: 1, rotations: Rotations::YZ },
        basis,
        ThresholdSchedule::new(schedule.to_vec()).unwrap(),
        OptimizerConfig::new(Method::Cobyla, budget),
    )
}

#[test]
fn stage_energies_are_variational_and_trajectory_is_counted() {
    let (ham, hf) = lih("lih_sto3g_parity_r1.59");
    let cfg = hwe(VqeBasis::Hct, &[0.053, 0.024], 400);
    let problem = VqeProblem::new(&ham.sum, &hf, &cfg).unwrap();
    let run = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    assert_eq!(run.thresholds, [0.053, 0.024, 0.0]);
    assert_eq!(run.stages.len(), 3);
    let mut eval = 0;
    for s in &run.stages {
        let floor = lowest_eigenvalue(&problem.hamiltonian(s.stage).unwrap(), 1e-10).unwrap();
        assert!(s.energy >= floor - 1e-9, "stage {} below its ground energy", s.stage);
        assert!(s.energy <= s.initial_energy);
        assert!(s.evals <= 400);
        let points: Vec<_> = run.trajectory.iter().filter(|p| p.stage == s.stage).collect();
        assert_eq!(points.len(), s.evals);
        assert_eq!(points[0].eval, eval + 1);
        eval += s.evals;
    }
    assert_eq!(run.trajectory.last().unwrap().eval, eval);
    assert!(run.final_energy >= ham.meta_f64("exact_energy").unwrap() - 1e-9);
    // the original-frame state reproduces the final energy
    let psi = run.final_state().unwrap();
    let e = hct_core::vqe::energy(&psi, &hct_core::solver::CompiledSum::new(&ham.sum).unwrap()).unwrap();
    assert!((e - run.final_energy).abs() < 1e-9);
}

#[test]
fn warm_start_continues_from_previous_stage() {
    let (ham, hf) = lih("lih_sto3g_parity_r1.59");
    let cfg = hwe(VqeBasis::Hct, &[0.031], 300);
    let problem = VqeProblem::new(&ham.sum, &hf, &cfg).unwrap();
    let run = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    // the embedded start of stage 1 is the stage-0 optimum evaluated on the stage-1 Hamiltonian
    let c0 = problem.circuit(0).unwrap();
    let psi = c0.state(&run.stages[0].params).unwrap();
    let h1 = hct_core::solver::CompiledSum::new(&problem.hamiltonian(1).unwrap()).unwrap();
    let e = hct_core::vqe::energy(&psi, &h1).unwrap();
    assert!((e - run.stages[1].initial_energy).abs() < 1e-10);
}

#[test]
fn runs_are_reproducible() {
    let (ham, hf) = lih("lih_sto3g_parity_r2.50");
    let mut cfg = hwe(VqeBasis::Original, &[], 200);
    cfg.seed = 9;
    let a = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    let b = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    assert_eq!(a.final_params, b.final_params);
    assert_eq!(a.trajectory, b.trajectory);
    cfg.seed = 10;
    let c = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    assert_ne!(a.trajectory[0], c.trajectory[0]);
}

#[test]
fn zero_noise_starts_at_reference() {
    let (ham, hf) = lih("lih_sto3g_parity_r1.59");
    let ehf = bitstring_energy(&ham.sum, &hf).unwrap();
    assert!((ehf - ham.meta_f64("hf_energy").unwrap()).abs() < 1e-9);
    for basis in [VqeBasis::Original, VqeBasis::Hct] {
        let mut cfg = hwe(basis, &[], 5);
        cfg.noise_std = 0.0;
        let run = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
        assert!((run.trajectory[0].energy - ehf).abs() < 1e-10);
    }
}

#[test]
fn pool_runs_with_lbfgs() {
    let reg = registry();
    let (ham, hf) = lih("lih_sto3g_parity_r2.50");
    let pool = parse_pool(&std::fs::read_to_string(reg.path("lih_sto3g_parity_r2.50_pool").unwrap()).unwrap()).unwrap();
    let cfg = VqeConfig::new(
        Family::Pool(pool),
        VqeBasis::Hct,
        ThresholdSchedule::new(vec![0.02]).unwrap(),
        OptimizerConfig::new(Method::Lbfgs, 3000),
    );
    let run = hct_vqe(&ham.sum, &hf, &cfg).unwrap();
    let exact = ham.meta_f64("exact_energy").unwrap();
    let ehf = bitstring_energy(&ham.sum, &hf).unwrap();
    assert!(run.final_energy >= exact - 1e-9);
    assert!(run.final_energy < ehf - 1e-4, "pool run stuck at {}", run.final_energy - exact);
}

#[test]
fn bad_inputs_are_rejected() {
    let (ham, hf) = lih("lih_sto3g_parity_r1.59");
    let cfg = hwe(VqeBasis::Hct, &[], 10);
    assert!(hct_vqe(&ham.sum, "1111", &cfg).is_err());
    assert!(hct_vqe(&ham.sum, &hf, &hwe(VqeBasis::Hct, &[], 0)).is_err());
    let pool = parse_pool(r#"{"n_qubits": 2, "elements": []}"#).unwrap();
    let cfg = VqeConfig::new(Family::Pool(pool), VqeBasis::Hct, ThresholdSchedule::empty(), OptimizerConfig::new(Method::Lbfgs, 10));
    assert!(hct_vqe(&ham.sum, &hf, &cfg).is_err());
}
