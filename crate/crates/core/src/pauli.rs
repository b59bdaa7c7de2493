//! Phase-exact Pauli strings in binary symplectic form, real-weighted Pauli
//! sums, truncation, and the Hamiltonian JSON format.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::gf2::BitVec;

/// Coefficients whose magnitude falls below this after combination are dropped.
pub const COMBINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("invalid Pauli character {ch:?} at position {pos}")]
    InvalidChar { ch: char, pos: usize },
    #[error("Pauli string is not Hermitian (phase i^{phase})")]
    NonHermitian { phase: u8 },
    #[error("threshold must be non-negative and finite, got {0}")]
    BadThreshold(f64),
    #[error("coefficient must be finite, got {0}")]
    NonFinite(f64),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitRange { qubit: usize, n: usize },
    #[error("invalid permutation: {0}")]
    Permutation(String),
}

/// `i^phase · X^x · Z^z`, with qubit 0 the leftmost label character.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Raw constructor: `i^phase · X^x · Z^z`.
    pub fn from_bits(x: BitVec, z: BitVec, phase: u8) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::Dimension {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z, phase: phase % 4 })
    }

    /// Single-qubit operator `letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: char) -> Result<Self, PauliError> {
        if qubit >= n {
            return Err(PauliError::QubitRange { qubit, n });
        }
        let mut p = Self::identity(n);
        p.set_letter(qubit, letter).map_err(|_| PauliError::InvalidChar { ch: letter, pos: 0 })?;
        Ok(p)
    }

    /// Z on each listed qubit.
    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::from_indices(n, qubits.iter().copied()),
            phase: 0,
        }
    }

    /// X on each listed qubit.
    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        Self {
            x: BitVec::from_indices(n, qubits.iter().copied()),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    fn set_letter(&mut self, q: usize, letter: char) -> Result<(), ()> {
        let (xb, zb) = match letter {
            'I' => (false, false),
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            _ => return Err(()),
        };
        let old_y = self.x.get(q) && self.z.get(q);
        self.x.set(q, xb);
        self.z.set(q, zb);
        // keep the letter-form sign fixed: Y = iXZ
        let new_y = xb && zb;
        self.phase = (self.phase + 4 + new_y as u8 - old_y as u8) % 4;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn y_count(&self) -> usize {
        self.x.and(&self.z).count_ones()
    }

    /// Phase relative to the letter form: the string equals `i^k · letters`.
    pub fn letter_phase(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_phase() % 2 == 0
    }

    /// Letter label without any phase prefix.
    pub fn label(&self) -> String {
        (0..self.n()).map(|q| self.letter(q)).collect()
    }

    /// Hermitian letter form: returns the sign and the phase-normalized string.
    pub fn to_hermitian(&self) -> Result<(f64, PauliString), PauliError> {
        let k = self.letter_phase();
        if k % 2 == 1 {
            return Err(PauliError::NonHermitian { phase: k });
        }
        let sign = if k == 0 { 1.0 } else { -1.0 };
        let mut p = self.clone();
        p.phase = (self.y_count() % 4) as u8;
        Ok((sign, p))
    }

    pub fn weight(&self) -> usize {
        let mut support = self.x.clone();
        for i in self.z.ones() {
            support.set(i, true);
        }
        support.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    fn check_dim(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::Dimension {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · other`, phases tracked exactly.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &PauliString) -> PauliString {
        // Z^b1 X^a2 = (-1)^{b1.a2} X^a2 Z^b1
        let swap = self.z.and(&other.x).count_ones() % 2;
        PauliString {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: ((self.phase as usize + other.phase as usize + 2 * swap) % 4) as u8,
        }
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut acc = 0u32;
        let (ax, az, bx, bz) = (self.x.words(), self.z.words(), other.x.words(), other.z.words());
        for k in 0..ax.len() {
            acc ^= ((ax[k] & bz[k]) ^ (az[k] & bx[k])).count_ones();
        }
        acc & 1 == 0
    }

    /// Relabel qubits: position `k` of the result carries qubit `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<PauliString, PauliError> {
        check_permutation(perm, self.n())?;
        let n = self.n();
        let x = BitVec::from_indices(n, (0..n).filter(|&k| self.x.get(perm[k])));
        let z = BitVec::from_indices(n, (0..n).filter(|&k| self.z.get(perm[k])));
        Ok(PauliString { x, z, phase: self.phase })
    }

    /// Drop the listed qubits (which must carry identity or be handled by the caller).
    pub(crate) fn remove_qubits(&self, remove: &[bool]) -> PauliString {
        let keep: Vec<usize> = (0..self.n()).filter(|&q| !remove[q]).collect();
        let m = keep.len();
        let x = BitVec::from_indices(m, (0..m).filter(|&k| self.x.get(keep[k])));
        let z = BitVec::from_indices(m, (0..m).filter(|&k| self.z.get(keep[k])));
        let y = x.and(&z).count_ones();
        PauliString { x, z, phase: (y % 4) as u8 }
    }

    /// Bit masks for statevector kernels, with qubit `q` at bit `n-1-q`.
    pub fn masks(&self) -> (u64, u64) {
        let n = self.n();
        assert!(n <= 64, "masks need n <= 64");
        let to_mask = |b: &BitVec| b.ones().fold(0u64, |m, q| m | (1u64 << (n - 1 - q)));
        (to_mask(&self.x), to_mask(&self.z))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), PauliError> {
    if perm.len() != n {
        return Err(PauliError::Permutation(format!("length {} for {n} qubits", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(PauliError::Permutation(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        seen[p] = true;
    }
    Ok(())
}

impl std::ops::Mul for &PauliString {
    type Output = PauliString;

    /// Panics on a qubit-count mismatch; use [`PauliString::multiply`] to handle it.
    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs).expect("Pauli product")
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parses a letter label over `IXYZ`, optionally prefixed by `+`, `-`, `i`, `+i` or `-i`.
    fn from_str(s: &str) -> Result<Self, PauliError> {
        let (prefix, body) = split_phase_prefix(s);
        let n = body.chars().count();
        let mut p = PauliString::identity(n);
        for (pos, ch) in body.chars().enumerate() {
            p.set_letter(pos, ch).map_err(|_| PauliError::InvalidChar {
                ch,
                pos: pos + (s.len() - body.len()),
            })?;
        }
        p.phase = (p.phase + prefix) % 4;
        Ok(p)
    }
}

fn split_phase_prefix(s: &str) -> (u8, &str) {
    for (pre, k) in [("+i", 1u8), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)] {
        if let Some(rest) = s.strip_prefix(pre) {
            return (k, rest);
        }
    }
    (0, s)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = ["", "i", "-", "-i"][self.letter_phase() as usize];
        write!(f, "{pre}{}", self.label())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Real linear combination of distinct Hermitian Pauli strings.
///
/// Strings are stored in Hermitian letter form with the sign folded into the
/// coefficient. Insertion order is preserved and duplicates combine.
#[derive(Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: IndexMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: IndexMap::new(),
        }
    }

    pub fn from_terms<'a>(
        n: usize,
        terms: impl IntoIterator<Item = (f64, &'a str)>,
    ) -> Result<Self, PauliError> {
        let mut h = Self::new(n);
        for (c, label) in terms {
            h.add(c, &label.parse()?)?;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff · p`. `p` may carry a phase of ±1; ±i is rejected.
    pub fn add(&mut self, coeff: f64, p: &PauliString) -> Result<(), PauliError> {
        if p.n() != self.n {
            return Err(PauliError::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        if !coeff.is_finite() {
            return Err(PauliError::NonFinite(coeff));
        }
        let (sign, key) = p.to_hermitian()?;
        let c = sign * coeff;
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.abs() < COMBINE_TOL {
                    self.terms.shift_remove(&key);
                }
            }
            None => {
                if c.abs() >= COMBINE_TOL {
                    self.terms.insert(key, c);
                }
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&PauliString, f64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn coeff(&self, p: &PauliString) -> f64 {
        match p.to_hermitian() {
            Ok((sign, key)) => self.terms.get(&key).map_or(0.0, |c| sign * c),
            Err(_) => 0.0,
        }
    }

    /// Terms with `|h| >= epsilon`, order preserved.
    pub fn truncate(&self, epsilon: f64) -> Result<PauliSum, PauliError> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(PauliError::BadThreshold(epsilon));
        }
        Ok(PauliSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() >= epsilon)
                .map(|(p, &c)| (p.clone(), c))
                .collect(),
        })
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc + c.abs())
    }

    /// Sorted distinct coefficient magnitudes, ascending.
    pub fn distinct_magnitudes(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.terms.values().map(|c| c.abs()).collect();
        m.sort_by(f64::total_cmp);
        m.dedup();
        m
    }

    pub fn permute(&self, perm: &[usize]) -> Result<PauliSum, PauliError> {
        check_permutation(perm, self.n)?;
        let mut out = PauliSum::new(self.n);
        for (p, c) in self.iter() {
            out.add(c, &p.permute(perm)?)?;
        }
        Ok(out)
    }

    /// Same terms sorted by label. Used where output order must not depend on
    /// insertion history.
    pub fn sorted(&self) -> PauliSum {
        let mut terms: Vec<(PauliString, f64)> = self.terms.iter().map(|(p, &c)| (p.clone(), c)).collect();
        terms.sort_by_cached_key(|t| t.0.label());
        PauliSum {
            n: self.n,
            terms: terms.into_iter().collect(),
        }
    }
}

impl fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliSum(n={}; ", self.n)?;
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{p}")?;
        }
        write!(f, ")")
    }
}

/// Where a Hamiltonian document failed to parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// JSON syntax error position (1-based).
    Text { line: usize, column: usize },
    /// Index into the `terms` array.
    Term(usize),
    /// Top-level fields.
    Header,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Text { line, column } => write!(f, "line {line}, column {column}"),
            Location::Term(i) => write!(f, "term {i}"),
            Location::Header => write!(f, "header"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: Location,
    pub message: String,
}

impl ParseError {
    fn at(location: Location, message: impl Into<String>) -> Self {
        Self {
            location,
            message: message.into(),
        }
    }

    pub(crate) fn from_json(e: &serde_json::Error) -> Self {
        Self::at(
            Location::Text {
                line: e.line(),
                column: e.column(),
            },
            e.to_string(),
        )
    }
}

/// A parsed Hamiltonian document.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub sum: PauliSum,
    pub metadata: Map<String, Value>,
}

impl Hamiltonian {
    pub fn meta_f64(&self, key: &str) -> Option<f64> {
        self.metadata.get(key).and_then(Value::as_f64)
    }

    pub fn meta_str(&self, key: &str) -> Option<&str> {
        self.metadata.get(key).and_then(Value::as_str)
    }

    pub fn meta_usize_list(&self, key: &str) -> Option<Vec<usize>> {
        self.metadata
            .get(key)?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|u| u as usize))
            .collect()
    }
}

/// Parse a coefficient: a number, `[re, im]`, or an object with `re`/`im` or `real`/`imag`.
fn parse_coeff(v: &Value) -> Result<f64, String> {
    let (re, im) = match v {
        Value::Number(x) => (x.as_f64(), Some(0.0)),
        Value::Array(a) if a.len() == 2 => (a[0].as_f64(), a[1].as_f64()),
        Value::Object(o) => {
            let re = o.get("re").or_else(|| o.get("real")).and_then(Value::as_f64);
            let im = o.get("im").or_else(|| o.get("imag")).map_or(Some(0.0), Value::as_f64);
            (re, im)
        }
        _ => (None, None),
    };
    let (Some(re), Some(im)) = (re, im) else {
        return Err(format!("coefficient {v} is not a real number"));
    };
    if im != 0.0 {
        return Err(format!("coefficient has nonzero imaginary part {im}"));
    }
    if !re.is_finite() {
        return Err(format!("coefficient {re} is not finite"));
    }
    Ok(re)
}

pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
    parse_hamiltonian_value(&doc)
}

pub fn parse_hamiltonian_value(doc: &Value) -> Result<Hamiltonian, ParseError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| ParseError::at(Location::Header, "document must be a JSON object"))?;
    let n = obj
        .get("n_qubits")
        .and_then(Value::as_u64)
        .ok_or_else(|| ParseError::at(Location::Header, "missing or invalid \"n_qubits\""))? as usize;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::at(Location::Header, "missing or invalid \"terms\" array"))?;
    let metadata = match obj.get("metadata") {
        None | Some(Value::Null) => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(ParseError::at(Location::Header, "\"metadata\" must be an object")),
    };
    let sum = parse_terms(n, terms)?;
    Ok(Hamiltonian { sum, metadata })
}

/// Parse a `[{"pauli", "coeff"}]` array into a sum on `n` qubits.
pub fn parse_terms(n: usize, terms: &[Value]) -> Result<PauliSum, ParseError> {
    let mut sum = PauliSum::new(n);
    for (i, t) in terms.iter().enumerate() {
        let at = |m: String| ParseError::at(Location::Term(i), m);
        let label = t
            .get("pauli")
            .and_then(Value::as_str)
            .ok_or_else(|| at("missing \"pauli\" string".into()))?;
        let len = label.chars().count();
        if len != n {
            return Err(at(format!("label {label:?} has length {len}, expected {n}")));
        }
        let p: PauliString = label.parse().map_err(|e: PauliError| at(e.to_string()))?;
        if p.letter_phase() != 0 {
            return Err(at(format!("label {label:?} must be a plain IXYZ string")));
        }
        let c = parse_coeff(t.get("coeff").unwrap_or(&Value::Null)).map_err(at)?;
        sum.add(c, &p).map_err(|e| at(e.to_string()))?;
    }
    Ok(sum)
}

pub fn terms_to_value(h: &PauliSum) -> Value {
    Value::Array(
        h.iter()
            .map(|(p, c)| {
                let mut t = Map::new();
                t.insert("pauli".into(), Value::String(p.label()));
                t.insert("coeff".into(), Value::from(c));
                Value::Object(t)
            })
            .collect(),
    )
}

pub fn hamiltonian_to_value(h: &PauliSum, metadata: Option<&Map<String, Value>>) -> Value {
    let mut doc = Map::new();
    doc.insert("n_qubits".into(), Value::from(h.n()));
    doc.insert("terms".into(), terms_to_value(h));
    doc.insert("metadata".into(), Value::Object(metadata.cloned().unwrap_or_default()));
    Value::Object(doc)
}

/// Serialize to the Hamiltonian JSON format. Coefficients print in shortest
/// round-trip form, so `parse(emit(h)) == h` bit for bit.
pub fn emit_hamiltonian(h: &PauliSum, metadata: Option<&Map<String, Value>>) -> String {
    serde_json::to_string_pretty(&hamiltonian_to_value(h, metadata)).expect("serializable")
}
