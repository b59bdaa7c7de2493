//! Parameterized circuits: hardware-efficient layers and pool exponentials on
//! top of a fixed `C† |bitstring>` preparation.

use std::collections::HashMap;

use num_complex::Complex64;

use super::VqeError;
use crate::pauli::PauliSum;
use crate::solver::{apply_clifford_dagger_to_state, CompiledSum, Statevector};
use crate::symmetry::CliffordFactor;

/// Tail bound of the series used for non-commuting exponentials.
const TAYLOR_TOL: f64 = 1e-12;

/// Stable identity of a gate across stages, used to carry parameters forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKey {
    /// Sector rotation on a symmetry qubit.
    SymRy(usize),
    /// RotY in repetition `rep`, layer `layer` (0 before the entangler, 1 after).
    Ry { rep: usize, layer: usize, qubit: usize },
    Rz { rep: usize, layer: usize, qubit: usize },
    Crx { rep: usize, control: usize, target: usize },
    /// Exponential of pool element `k`.
    Pool(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Ry(usize),
    Rz(usize),
    Crx { control: usize, target: usize },
    /// `exp(-i θ/2 O)` with `O` the indexed operator of the circuit.
    Exp(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub key: GateKey,
    pub kind: GateKind,
    /// Stage at which the gate first appeared.
    pub stage: usize,
}

/// Fixed state preparation `C† |bits>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prelude {
    pub bitstring: String,
    pub factors: Vec<CliffordFactor>,
}

impl Prelude {
    pub fn new(bitstring: &str, factors: Vec<CliffordFactor>) -> Self {
        Self {
            bitstring: bitstring.to_string(),
            factors,
        }
    }

    pub fn state(&self) -> Result<Statevector, VqeError> {
        let s = Statevector::from_bitstring(&self.bitstring)?;
        Ok(apply_clifford_dagger_to_state(&self.factors, &s))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzCircuit {
    pub n: usize,
    pub prelude: Prelude,
    pub gates: Vec<Gate>,
    /// Operators referenced by `GateKind::Exp`.
    pub operators: Vec<PauliSum>,
    /// Symmetry qubits of the stage this circuit was built for.
    pub symmetry_qubits: Vec<usize>,
}

impl AnsatzCircuit {
    pub fn n_params(&self) -> usize {
        self.gates.len()
    }

    pub fn stage_tags(&self) -> Vec<usize> {
        self.gates.iter().map(|g| g.stage).collect()
    }

    /// `|ψ(θ)>`, starting from an already prepared prelude state.
    pub fn state_from(&self, start: &Statevector, params: &[f64]) -> Result<Statevector, VqeError> {
        if params.len() != self.gates.len() {
            return Err(VqeError::Parameters {
                expected: self.gates.len(),
                got: params.len(),
            });
        }
        let mut psi = start.clone();
        for (g, &t) in self.gates.iter().zip(params) {
            match g.kind {
                GateKind::Ry(q) => psi.apply_ry(q, t),
                GateKind::Rz(q) => psi.apply_rz(q, t),
                GateKind::Crx { control, target } => psi.apply_crx(control, target, t),
                GateKind::Exp(k) => psi = apply_exponential(t, &self.operators[k], &psi),
            }
        }
        Ok(psi)
    }

    pub fn state(&self, params: &[f64]) -> Result<Statevector, VqeError> {
        self.state_from(&self.prelude.state()?, params)
    }
}

fn validate_qubits(n: usize, qubits: &[usize]) -> Result<Vec<bool>, VqeError> {
    let mut is_sym = vec![false; n];
    for &q in qubits {
        if q >= n || std::mem::replace(&mut is_sym[q], true) {
            return Err(VqeError::Structure(format!("invalid symmetry qubit set {qubits:?} for {n} qubits")));
        }
    }
    Ok(is_sym)
}

/// Single-qubit rotation content of a hardware-efficient layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rotations {
    Y,
    /// RotY followed by RotZ on each qubit.
    #[default]
    YZ,
}

/// RotY on each symmetry qubit, then `depth` repetitions of
/// [rotation layer, all-to-all controlled RotX, rotation layer] on the other qubits.
pub fn build_hwe_ansatz(
    n: usize,
    symmetry_qubits: &[usize],
    depth: usize,
    rotations: Rotations,
    prelude: Prelude,
) -> Result<AnsatzCircuit, VqeError> {
    let is_sym = validate_qubits(n, symmetry_qubits)?;
    check_prelude(n, &prelude)?;
    let mut sym: Vec<usize> = symmetry_qubits.to_vec();
    sym.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|&q| !is_sym[q]).collect();
    let mut gates = Vec::new();
    let mut push = |key, kind| gates.push(Gate { key, kind, stage: 0 });
    for &q in &sym {
        push(GateKey::SymRy(q), GateKind::Ry(q));
    }
    for rep in 0..depth {
        for &q in &rest {
            push(GateKey::Ry { rep, layer: 0, qubit: q }, GateKind::Ry(q));
            if rotations == Rotations::YZ {
                push(GateKey::Rz { rep, layer: 0, qubit: q }, GateKind::Rz(q));
            }
        }
        for (i, &c) in rest.iter().enumerate() {
            for &t in &rest[i + 1..] {
                push(
                    GateKey::Crx { rep, control: c, target: t },
                    GateKind::Crx { control: c, target: t },
                );
            }
        }
        for &q in &rest {
            push(GateKey::Ry { rep, layer: 1, qubit: q }, GateKind::Ry(q));
            if rotations == Rotations::YZ {
                push(GateKey::Rz { rep, layer: 1, qubit: q }, GateKind::Rz(q));
            }
        }
    }
    Ok(AnsatzCircuit {
        n,
        prelude,
        gates,
        operators: Vec::new(),
        symmetry_qubits: sym,
    })
}

/// RotY on each symmetry qubit followed by the exponentials of the given pool
/// elements, in order. `elements` pairs each pool index with its operator.
pub fn build_pool_ansatz(
    n: usize,
    symmetry_qubits: &[usize],
    elements: &[(usize, PauliSum)],
    prelude: Prelude,
) -> Result<AnsatzCircuit, VqeError> {
    validate_qubits(n, symmetry_qubits)?;
    check_prelude(n, &prelude)?;
    let mut sym: Vec<usize> = symmetry_qubits.to_vec();
    sym.sort_unstable();
    let mut gates: Vec<Gate> = sym
        .iter()
        .map(|&q| Gate {
            key: GateKey::SymRy(q),
            kind: GateKind::Ry(q),
            stage: 0,
        })
        .collect();
    let mut operators = Vec::with_capacity(elements.len());
    for (k, o) in elements {
        if o.n() != n {
            return Err(VqeError::Structure(format!("pool element {k} acts on {} qubits, expected {n}", o.n())));
        }
        gates.push(Gate {
            key: GateKey::Pool(*k),
            kind: GateKind::Exp(operators.len()),
            stage: 0,
        });
        operators.push(o.clone());
    }
    Ok(AnsatzCircuit {
        n,
        prelude,
        gates,
        operators,
        symmetry_qubits: sym,
    })
}

fn check_prelude(n: usize, prelude: &Prelude) -> Result<(), VqeError> {
    let len = prelude.bitstring.chars().count();
    if len != n {
        return Err(VqeError::Structure(format!("prelude bitstring has {len} bits, expected {n}")));
    }
    if let Some(f) = prelude.factors.iter().find(|f| f.n() != n) {
        return Err(VqeError::Structure(format!("prelude factor acts on {} qubits, expected {n}", f.n())));
    }
    Ok(())
}

/// Initial parameters of `next` reproducing `prev` at `prev_params`: shared gates
/// copy their values, a symmetry rotation whose qubit is no longer a symmetry
/// qubit moves to the first RotY on that qubit, and everything else starts at 0.
/// Gates of `next` not found in `prev` are tagged with `stage`. The resulting
/// state is checked against the previous one.
pub fn embed_parameters(
    prev: &AnsatzCircuit,
    prev_params: &[f64],
    next: &mut AnsatzCircuit,
    stage: usize,
) -> Result<Vec<f64>, VqeError> {
    if prev.n != next.n || prev.prelude != next.prelude {
        return Err(VqeError::Embedding("circuits differ in size or state preparation".into()));
    }
    if prev_params.len() != prev.gates.len() {
        return Err(VqeError::Parameters {
            expected: prev.gates.len(),
            got: prev_params.len(),
        });
    }
    let slot: HashMap<GateKey, usize> = next.gates.iter().enumerate().map(|(i, g)| (g.key, i)).collect();
    let mut params = vec![0.0; next.gates.len()];
    let mut tags: Vec<Option<usize>> = vec![None; next.gates.len()];
    for (g, &v) in prev.gates.iter().zip(prev_params) {
        let target = slot.get(&g.key).copied().or_else(|| match g.key {
            GateKey::SymRy(q) => slot.get(&GateKey::Ry { rep: 0, layer: 0, qubit: q }).copied(),
            _ => None,
        });
        let Some(i) = target else {
            if v == 0.0 {
                continue;
            }
            return Err(VqeError::Embedding(format!("gate {:?} has no counterpart in the next circuit", g.key)));
        };
        let kind = &next.gates[i].kind;
        match (&g.kind, kind) {
            (GateKind::Exp(a), GateKind::Exp(b)) if prev.operators[*a] != next.operators[*b] => {
                return Err(VqeError::Embedding(format!("operator of gate {:?} changed", g.key)));
            }
            (GateKind::Exp(_), GateKind::Exp(_)) | (GateKind::Ry(_), GateKind::Ry(_)) => {}
            (a, b) if a == b => {}
            _ => return Err(VqeError::Embedding(format!("gate {:?} changed kind", g.key))),
        }
        params[i] = v;
        tags[i] = Some(g.stage);
    }
    for (g, t) in next.gates.iter_mut().zip(&tags) {
        g.stage = t.unwrap_or(stage);
    }
    let start = prev.prelude.state()?;
    let before = prev.state_from(&start, prev_params)?;
    let after = next.state_from(&start, &params)?;
    let dist = before
        .amplitudes()
        .iter()
        .zip(after.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if dist > 1e-12 {
        return Err(VqeError::Embedding(format!("embedded state differs by {dist:e}")));
    }
    Ok(params)
}

/// `exp(-i θ/2 O) ψ` for a Hermitian sum `O`.
///
/// Mutually commuting terms are applied as exact Pauli rotations; otherwise the
/// exponential is expanded as a Taylor series over enough scaled steps that each
/// step's series converges quickly.
pub fn apply_exponential(theta: f64, o: &PauliSum, psi: &Statevector) -> Statevector {
    if theta == 0.0 || o.is_empty() {
        return psi.clone();
    }
    let terms: Vec<_> = o.iter().collect();
    let commuting = terms
        .iter()
        .enumerate()
        .all(|(i, (p, _))| terms[i + 1..].iter().all(|(q, _)| p.commutes_unchecked(q)));
    if commuting {
        let mut out = psi.clone();
        for (p, c) in terms {
            out.apply_pauli_rotation(p, theta * c);
        }
        return out;
    }
    let op = CompiledSum::new(o).expect("operator matches the state size");
    let scale = 0.5 * theta.abs() * o.l1_norm();
    let steps = scale.ceil().max(1.0) as usize;
    let dt = Complex64::new(0.0, -0.5 * theta / steps as f64);
    let mut v = psi.amplitudes().to_vec();
    let mut term = vec![Complex64::new(0.0, 0.0); v.len()];
    let mut next = vec![Complex64::new(0.0, 0.0); v.len()];
    for _ in 0..steps {
        term.copy_from_slice(&v);
        let mut k = 1usize;
        loop {
            op.apply_into(&term, &mut next);
            let f = dt / k as f64;
            let mut tn = 0.0;
            for (t, x) in term.iter_mut().zip(&next) {
                *t = x * f;
                tn += t.norm_sqr();
            }
            for (a, t) in v.iter_mut().zip(&term) {
                *a += t;
            }
            k += 1;
            if tn.sqrt() < TAYLOR_TOL || k > 200 {
                break;
            }
        }
    }
    Statevector::from_amplitudes(v)
}

/// Energy `<ψ|H|ψ>`; fails if the imaginary residue exceeds `1e-10`.
pub fn energy(psi: &Statevector, h: &CompiledSum) -> Result<f64, VqeError> {
    if h.n() != psi.n() {
        return Err(VqeError::Structure(format!(
            "state has {} qubits, Hamiltonian {}",
            psi.n(),
            h.n()
        )));
    }
    let (re, im) = h.expectation(psi.amplitudes());
    if im.abs() > 1e-10 {
        return Err(VqeError::Imaginary(im));
    }
    Ok(re)
}
