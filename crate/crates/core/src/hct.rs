//! Hierarchical Clifford transformations built from the symmetries of
//! coefficient-truncated Hamiltonians, plus violation bounds and scans.

use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::dense;
use crate::gf2::BitVec;
use crate::pauli::{ParseError, PauliError, PauliString, PauliSum};
use crate::solver::{self, SolverError};
use crate::symmetry::{self, CliffordFactor, SymmetryBasis, SymmetryError};

/// Largest qubit count for the exact commutator norm.
pub const MAX_EXACT_NORM_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HctError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("invalid threshold schedule: {0}")]
    Schedule(String),
    #[error("generator {generator} at threshold {threshold} anticommutes with the prior symmetry operator on qubit {qubit}")]
    Consistency { threshold: f64, generator: String, qubit: usize },
    #[error("invalid HCT document: {0}")]
    Document(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("exact commutator norm needs n <= {MAX_EXACT_NORM_QUBITS}, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Strictly decreasing positive thresholds; a final zero is implicit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ThresholdSchedule {
    thresholds: Vec<f64>,
}

impl ThresholdSchedule {
    pub fn new(thresholds: Vec<f64>) -> Result<Self, HctError> {
        for (i, &e) in thresholds.iter().enumerate() {
            if !(e > 0.0 && e.is_finite()) {
                return Err(HctError::Schedule(format!("threshold {i} = {e} is not a positive finite number")));
            }
        }
        if let Some(w) = thresholds.windows(2).find(|w| w[0] <= w[1]) {
            return Err(HctError::Schedule(format!("thresholds must strictly decrease, found {} then {}", w[0], w[1])));
        }
        Ok(Self { thresholds })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `"e0,e1,..."`. Whitespace around entries is ignored; an empty string
    /// is the empty schedule.
    pub fn parse(s: &str) -> Result<Self, HctError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let vals = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| HctError::Schedule(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vals)
    }

    /// Thresholds from largest to smallest, without the implicit zero.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    /// Thresholds in build order: `0` first, then increasing.
    pub fn build_order(&self) -> Vec<f64> {
        std::iter::once(0.0).chain(self.thresholds.iter().rev().copied()).collect()
    }
}

impl fmt::Display for ThresholdSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.thresholds.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Distinct coefficient magnitudes in `(0, epsilon0]`, largest first.
pub fn fine_grid_schedule(h: &PauliSum, epsilon0: f64) -> Result<ThresholdSchedule, HctError> {
    if !(epsilon0 > 0.0 && epsilon0.is_finite()) {
        return Err(HctError::Schedule(format!("epsilon0 must be positive, got {epsilon0}")));
    }
    let mut t: Vec<f64> = h
        .distinct_magnitudes()
        .into_iter()
        .filter(|&m| m > 0.0 && m <= epsilon0)
        .collect();
    t.reverse();
    ThresholdSchedule::new(t)
}

/// Symmetries added at one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct HctStage {
    pub threshold: f64,
    pub new_generators: Vec<PauliString>,
    pub new_qubits: Vec<usize>,
    pub factors: Vec<CliffordFactor>,
}

impl HctStage {
    fn from_basis(threshold: f64, basis: SymmetryBasis) -> Self {
        let factors = basis.factors();
        Self {
            threshold,
            new_generators: basis.generators,
            new_qubits: basis.symmetry_qubits,
            factors,
        }
    }

    pub fn len(&self) -> usize {
        self.new_generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_generators.is_empty()
    }
}

/// Symmetries of `truncate(h, epsilon)` that are new relative to `prior`.
///
/// Each bare generator is reduced against the prior generators (in order) so it
/// acts as identity on every prior symmetry qubit; the reduced set is then
/// brought to rref, whose pivots are the new symmetry qubits.
pub fn extend_symmetries(h: &PauliSum, epsilon: f64, prior: &SymmetryBasis) -> Result<HctStage, HctError> {
    if !(epsilon > 0.0) {
        return Err(HctError::Schedule(format!("stage threshold must be positive, got {epsilon}")));
    }
    let n = h.n();
    let bare = symmetry::find_symmetries(&h.truncate(epsilon)?);
    let reduced: Vec<BitVec> = bare
        .generators
        .iter()
        .map(|g| {
            let mut w = g.z_bits().clone();
            for (q, tau) in prior.symmetry_qubits.iter().zip(&prior.generators) {
                if w.get(*q) {
                    w.xor_assign(tau.z_bits());
                }
            }
            w
        })
        .filter(|w| !w.is_zero())
        .collect();
    let gens: Vec<PauliString> = if reduced.is_empty() {
        Vec::new()
    } else {
        let (r, pivots) = crate::gf2::BitMatrix::from_rows(n, &reduced).rref();
        (0..pivots.len())
            .map(|i| PauliString::from_bits(BitVec::zeros(n), r.row(i), 0).expect("sizes agree"))
            .collect()
    };
    let basis = symmetry::assign_symmetry_qubits(&gens)?;
    for (g, _) in basis.generators.iter().zip(&basis.symmetry_qubits) {
        for (s, &q) in prior.sigma_ops.iter().zip(&prior.symmetry_qubits) {
            if !g.commutes_unchecked(s) {
                return Err(HctError::Consistency {
                    threshold: epsilon,
                    generator: g.to_string(),
                    qubit: q,
                });
            }
        }
    }
    Ok(HctStage::from_basis(epsilon, basis))
}

/// Ordered Clifford factors, grouped by the threshold that produced them.
/// Stage 0 holds the exact symmetries (threshold 0); later stages increase in threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct HctTransform {
    n: usize,
    stages: Vec<HctStage>,
}

impl HctTransform {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stages(&self) -> &[HctStage] {
        &self.stages
    }

    pub fn n_total_syms(&self) -> usize {
        self.stages.iter().map(HctStage::len).sum()
    }

    /// All factors in application order.
    pub fn factors(&self) -> Vec<CliffordFactor> {
        self.stages.iter().flat_map(|s| s.factors.iter().cloned()).collect()
    }

    /// Cumulative generators, qubits and σ operators over every stage.
    pub fn cumulative_basis(&self) -> SymmetryBasis {
        self.basis_where(|_| true)
    }

    /// Basis of the stages whose threshold is at most `epsilon`: the exact
    /// symmetries of `truncate(h, epsilon)` in this transform's frame.
    pub fn basis_upto(&self, epsilon: f64) -> SymmetryBasis {
        self.basis_where(|s| s.threshold <= epsilon)
    }

    fn basis_where(&self, keep: impl Fn(&HctStage) -> bool) -> SymmetryBasis {
        let mut b = SymmetryBasis::empty();
        for s in self.stages.iter().filter(|s| keep(s)) {
            b.generators.extend(s.new_generators.iter().cloned());
            b.symmetry_qubits.extend(s.new_qubits.iter().copied());
            b.sigma_ops.extend(s.factors.iter().map(|f| f.sigma().clone()));
        }
        b
    }

    /// Symmetry qubits of the stages with threshold at most `epsilon`.
    pub fn qubits_upto(&self, epsilon: f64) -> Vec<usize> {
        self.basis_upto(epsilon).symmetry_qubits
    }

    /// Cumulative symmetry count after each stage, as `(threshold, n_eps)`.
    pub fn counts(&self) -> Vec<(f64, usize)> {
        let mut total = 0;
        self.stages
            .iter()
            .map(|s| {
                total += s.len();
                (s.threshold, total)
            })
            .collect()
    }

    /// Threshold of the stage that introduced the symmetry on `qubit`.
    pub fn stage_threshold_of(&self, qubit: usize) -> Option<f64> {
        self.stages
            .iter()
            .find(|s| s.new_qubits.contains(&qubit))
            .map(|s| s.threshold)
    }

    /// Qubit order with exact symmetry qubits first, then approximate ones in
    /// discovery order, then the rest in original order. Entry `k` is the
    /// original qubit placed at position `k`.
    pub fn qubit_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for s in &self.stages {
            for &q in &s.new_qubits {
                seen[q] = true;
                order.push(q);
            }
        }
        order.extend((0..self.n).filter(|&q| !seen[q]));
        order
    }

    /// Checks that every cumulative generator anticommutes only with its own σ
    /// among σ ops of the same or earlier stages, and that the full transform maps
    /// each generator to its σ.
    pub fn verify(&self) -> Result<(), HctError> {
        let factors = self.factors();
        let mut earlier: Vec<(usize, &PauliString)> = Vec::new();
        for s in &self.stages {
            for (j, (g, f)) in s.new_generators.iter().zip(&s.factors).enumerate() {
                for &(q, sig) in &earlier {
                    if !g.commutes_unchecked(sig) {
                        return Err(HctError::Consistency {
                            threshold: s.threshold,
                            generator: g.to_string(),
                            qubit: q,
                        });
                    }
                }
                for (k, f2) in s.factors.iter().enumerate() {
                    if g.commutes_unchecked(f2.sigma()) == (j == k) {
                        return Err(HctError::Consistency {
                            threshold: s.threshold,
                            generator: g.to_string(),
                            qubit: s.new_qubits[k],
                        });
                    }
                }
                let mut img = g.clone();
                for f in &factors {
                    img = f.conjugate(&img);
                }
                if &img != f.sigma() {
                    return Err(HctError::Consistency {
                        threshold: s.threshold,
                        generator: g.to_string(),
                        qubit: s.new_qubits[j],
                    });
                }
            }
            for (q, f) in s.new_qubits.iter().zip(&s.factors) {
                earlier.push((*q, f.sigma()));
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| {
                let mut m = Map::new();
                m.insert("threshold".into(), Value::from(s.threshold));
                m.insert(
                    "generators".into(),
                    Value::Array(s.new_generators.iter().map(|g| Value::String(g.label())).collect()),
                );
                m.insert(
                    "qubits".into(),
                    Value::Array(s.new_qubits.iter().map(|&q| Value::from(q)).collect()),
                );
                Value::Object(m)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("n_qubits".into(), Value::from(self.n));
        doc.insert("stages".into(), Value::Array(stages));
        Value::Object(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Parse the HCT JSON document. `n_qubits` is optional when any stage has a
    /// generator. Factors are rebuilt as `(X_q + τ)/√2` and the result is verified.
    pub fn from_json(text: &str) -> Result<Self, HctError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
        Self::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &Value) -> Result<Self, HctError> {
        let bad = |m: String| HctError::Document(m);
        let stages_v = doc
            .get("stages")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"stages\" array".into()))?;
        let mut n = match doc.get("n_qubits") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| bad("\"n_qubits\" must be a non-negative integer".into()))? as usize),
        };
        let mut stages = Vec::with_capacity(stages_v.len());
        let mut last = f64::NEG_INFINITY;
        for (i, sv) in stages_v.iter().enumerate() {
            let threshold = sv
                .get("threshold")
                .and_then(Value::as_f64)
                .ok_or_else(|| bad(format!("stage {i}: missing numeric \"threshold\"")))?;
            if !(threshold >= 0.0 && threshold.is_finite()) || threshold <= last {
                return Err(bad(format!("stage {i}: thresholds must be finite, non-negative and increasing")));
            }
            if (i == 0) != (threshold == 0.0) {
                return Err(bad(format!("stage {i}: only the first stage has threshold 0")));
            }
            last = threshold;
            let gens_v = sv
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("stage {i}: missing \"generators\" array")))?;
            let qubits_v = sv
                .get("qubits")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("stage {i}: missing \"qubits\" array")))?;
            if gens_v.len() != qubits_v.len() {
                return Err(bad(format!("stage {i}: {} generators but {} qubits", gens_v.len(), qubits_v.len())));
            }
            let mut gens = Vec::with_capacity(gens_v.len());
            let mut qubits = Vec::with_capacity(gens_v.len());
            for (g, q) in gens_v.iter().zip(qubits_v) {
                let label = g.as_str().ok_or_else(|| bad(format!("stage {i}: generator is not a string")))?;
                let p: PauliString = label.parse()?;
                if p.letter_phase() != 0 {
                    return Err(bad(format!("stage {i}: generator {label:?} must be a plain IXYZ string")));
                }
                let nn = *n.get_or_insert(p.n());
                if p.n() != nn {
                    return Err(PauliError::Dimension { left: nn, right: p.n() }.into());
                }
                let q = q.as_u64().ok_or_else(|| bad(format!("stage {i}: qubit is not an integer")))? as usize;
                if q >= nn {
                    return Err(PauliError::QubitRange { qubit: q, n: nn }.into());
                }
                gens.push(p);
                qubits.push(q);
            }
            stages.push((threshold, gens, qubits));
        }
        let n = n.ok_or_else(|| bad("cannot infer qubit count: no generators and no \"n_qubits\"".into()))?;
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(stages.len());
        for (threshold, gens, qubits) in stages {
            let mut factors = Vec::with_capacity(gens.len());
            for (g, &q) in gens.iter().zip(&qubits) {
                if std::mem::replace(&mut seen[q], true) {
                    return Err(bad(format!("qubit {q} assigned twice")));
                }
                factors.push(CliffordFactor::new(PauliString::x_on(n, &[q]), g.clone())?);
            }
            out.push(HctStage {
                threshold,
                new_generators: gens,
                new_qubits: qubits,
                factors,
            });
        }
        if out.is_empty() {
            out.push(HctStage {
                threshold: 0.0,
                new_generators: Vec::new(),
                new_qubits: Vec::new(),
                factors: Vec::new(),
            });
        }
        let t = HctTransform { n, stages: out };
        t.verify()?;
        Ok(t)
    }
}

/// Stage 0 from the exact symmetries of `h`, then one stage per threshold in
/// increasing order. Stages may be empty.
pub fn build_hct(h: &PauliSum, schedule: &ThresholdSchedule) -> Result<HctTransform, HctError> {
    let exact = symmetry::find_symmetries(h);
    let mut stages = vec![HctStage::from_basis(0.0, exact.clone())];
    let mut cumulative = exact;
    for eps in schedule.thresholds().iter().rev().copied() {
        let stage = extend_symmetries(h, eps, &cumulative)?;
        cumulative.generators.extend(stage.new_generators.iter().cloned());
        cumulative.symmetry_qubits.extend(stage.new_qubits.iter().copied());
        cumulative.sigma_ops.extend(stage.factors.iter().map(|f| f.sigma().clone()));
        stages.push(stage);
    }
    Ok(HctTransform { n: h.n(), stages })
}

/// `C† H C` for the full transform.
pub fn conjugate_by_hct(h: &PauliSum, t: &HctTransform) -> Result<PauliSum, HctError> {
    Ok(symmetry::conjugate_sum(h, &t.factors())?)
}

/// `2 Σ |h_i|` over terms with `|h_i| < epsilon`.
pub fn violation_bound(h: &PauliSum, epsilon: f64) -> f64 {
    2.0 * h.iter().map(|(_, c)| c.abs()).filter(|&a| a < epsilon).fold(0.0, |acc, a| acc + a)
}

/// `‖[σ, Ht]‖`. Bound mode sums `2|h_i|` over anticommuting terms; exact mode
/// computes the operator norm (n ≤ 12).
pub fn violation_norm(ht: &PauliSum, sigma: &PauliString, exact: bool) -> Result<f64, HctError> {
    if sigma.n() != ht.n() {
        return Err(PauliError::Dimension { left: ht.n(), right: sigma.n() }.into());
    }
    if !exact {
        return Ok(2.0
            * ht
                .iter()
                .filter(|(p, _)| !p.commutes_unchecked(sigma))
                .fold(0.0, |acc, (_, c)| acc + c.abs()));
    }
    if ht.n() > MAX_EXACT_NORM_QUBITS {
        return Err(HctError::TooLarge(ht.n()));
    }
    // [σ, Ht] = Σ 2 h_i σ P_i over anticommuting P_i; i σ P_i is Hermitian and
    // anticommutes with σ, so the spectrum of the Hermitian sum is symmetric.
    let mut a = PauliSum::new(ht.n());
    for (p, c) in ht.iter().filter(|(p, _)| !p.commutes_unchecked(sigma)) {
        let sp = sigma * p;
        let isp = PauliString::from_bits(sp.x_bits().clone(), sp.z_bits().clone(), sp.phase_exp() + 1)?;
        a.add(2.0 * c, &isp)?;
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    if a.n() <= 8 {
        let ev = dense::eigenvalues(&a);
        return Ok(ev[0].abs().max(ev[ev.len() - 1].abs()));
    }
    let lo = solver::lowest_eigenvalue(&a, 1e-12)?;
    let mut neg = PauliSum::new(a.n());
    for (p, c) in a.iter() {
        neg.add(-c, p)?;
    }
    let hi = solver::lowest_eigenvalue(&neg, 1e-12)?;
    Ok(lo.abs().max(hi.abs()))
}

/// Number of independent Z-type symmetries of `truncate(h, ε)` for each grid point.
pub fn scan_symmetries(h: &PauliSum, grid: &[f64]) -> Result<Vec<(f64, usize)>, HctError> {
    grid.iter()
        .map(|&e| Ok((e, symmetry::count_symmetries(&h.truncate(e)?))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(n: usize, t: &[(f64, &str)]) -> PauliSum {
        PauliSum::from_terms(n, t.iter().copied()).unwrap()
    }

    #[test]
    fn schedule_validation() {
        assert!(ThresholdSchedule::new(vec![0.5, 0.2]).is_ok());
        assert!(ThresholdSchedule::new(vec![0.2, 0.5]).is_err());
        assert!(ThresholdSchedule::new(vec![0.5, 0.5]).is_err());
        assert!(ThresholdSchedule::new(vec![0.5, 0.0]).is_err());
        assert_eq!(ThresholdSchedule::parse(" 0.5, 0.1 ").unwrap().thresholds(), [0.5, 0.1]);
        assert!(ThresholdSchedule::parse("").unwrap().is_empty());
        assert!(ThresholdSchedule::parse("0.5,,0.1").is_err());
        assert!(ThresholdSchedule::parse("nan").is_err());
    }

    #[test]
    fn fine_grid_examples() {
        let h = sum(2, &[(0.5, "ZI"), (-0.5, "IZ"), (0.2, "XX")]);
        assert_eq!(fine_grid_schedule(&h, 1.0).unwrap().thresholds(), [0.5, 0.2]);
        assert!(fine_grid_schedule(&h, 0.1).unwrap().is_empty());
    }

    #[test]
    fn extend_below_min_is_empty() {
        let h = sum(2, &[(1.0, "ZZ"), (0.1, "XX")]);
        let prior = symmetry::find_symmetries(&h);
        assert!(extend_symmetries(&h, 0.05, &prior).unwrap().is_empty());
    }

    #[test]
    fn extend_adds_one_generator() {
        let h = sum(2, &[(1.0, "ZZ"), (0.1, "XX")]);
        let prior = symmetry::find_symmetries(&h);
        assert_eq!(prior.len(), 1);
        let stage = extend_symmetries(&h, 0.5, &prior).unwrap();
        assert_eq!(stage.len(), 1);
        assert_eq!(stage.new_qubits, [1]);
        assert_eq!(stage.new_generators[0].label(), "IZ");
    }

    #[test]
    fn empty_schedule_is_tapering() {
        let h = sum(3, &[(1.0, "ZZI"), (0.3, "XXI"), (0.2, "IZZ")]);
        let t = build_hct(&h, &ThresholdSchedule::empty()).unwrap();
        let tap = symmetry::find_symmetries(&h);
        assert_eq!(t.stages().len(), 1);
        assert_eq!(t.factors(), tap.factors());
        assert_eq!(
            conjugate_by_hct(&h, &t).unwrap(),
            symmetry::conjugate_sum(&h, &tap.factors()).unwrap()
        );
    }

    #[test]
    fn violation_examples() {
        let h = sum(2, &[(1.0, "ZZ"), (0.1, "XI"), (-0.05, "IX")]);
        assert!((violation_bound(&h, 0.5) - 0.3).abs() < 1e-15);
        assert_eq!(violation_bound(&h, 0.0), 0.0);
        let ht = sum(1, &[(0.1, "Z")]);
        let x: PauliString = "X".parse().unwrap();
        assert!((violation_norm(&ht, &x, false).unwrap() - 0.2).abs() < 1e-15);
        assert!((violation_norm(&ht, &x, true).unwrap() - 0.2).abs() < 1e-14);
        let hc = sum(1, &[(0.1, "X")]);
        assert_eq!(violation_norm(&hc, &x, false).unwrap(), 0.0);
        assert_eq!(violation_norm(&hc, &x, true).unwrap(), 0.0);
    }

    #[test]
    fn scan_above_max_gives_n() {
        let h = sum(3, &[(1.0, "XXI"), (0.5, "IYY")]);
        let s = scan_symmetries(&h, &[0.0, 0.7, 2.0]).unwrap();
        assert_eq!(s, vec![(0.0, 1), (0.7, 2), (2.0, 3)]);
    }

    #[test]
    fn json_round_trip() {
        let h = sum(3, &[(1.0, "ZZI"), (0.3, "XXI"), (0.2, "IZZ"), (0.01, "IXX")]);
        let sched = ThresholdSchedule::new(vec![0.5, 0.1]).unwrap();
        let t = build_hct(&h, &sched).unwrap();
        t.verify().unwrap();
        let back = HctTransform::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_rejects_inconsistent_documents() {
        let docs = [
            r#"{"stages":[{"threshold":0,"generators":["XZ"],"qubits":[0]}]}"#,
            r#"{"stages":[{"threshold":0,"generators":["ZZ"],"qubits":[0]},{"threshold":0.5,"generators":["ZZ"],"qubits":[1]}]}"#,
            r#"{"stages":[{"threshold":0,"generators":["ZI"],"qubits":[1]}]}"#,
            r#"{"stages":[{"threshold":0.2,"generators":[],"qubits":[]}]}"#,
            r#"{"stages":[]}"#,
        ];
        for d in docs {
            assert!(HctTransform::from_json(d).is_err(), "{d}");
        }
        let ok = r#"{"n_qubits":2,"stages":[]}"#;
        assert_eq!(HctTransform::from_json(ok).unwrap().n_total_syms(), 0);
    }
}
