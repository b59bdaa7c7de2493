//! Statevectors, matrix-free Pauli-sum application, Lanczos ground states and
//! entanglement diagnostics.
//!
//! Amplitude index convention: qubit 0 is the most significant bit.

mod entropy;
mod lanczos;

pub use entropy::{
    entanglement_entropy, entropy_profile, mutual_information, reduced_density, single_qubit_entropies,
    von_neumann, MAX_REDUCED_QUBITS,
};
pub use lanczos::{ground_state_with, lowest_eigenvalue, GroundState, LanczosConfig};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::dense::I_POW;
use crate::pauli::{check_permutation, PauliError, PauliString, PauliSum};
use crate::symmetry::CliffordFactor;

/// Largest qubit count for statevector work.
pub const MAX_STATE_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("{what}: {got} qubits exceeds the limit of {limit}")]
    TooLarge { what: &'static str, got: usize, limit: usize },
    #[error("Lanczos did not converge after {restarts} restarts: energy {energy}, residual {residual:e}")]
    NotConverged { restarts: usize, energy: f64, residual: f64 },
    #[error("invalid subset: {0}")]
    Subset(String),
    #[error("invalid bitstring {0:?}")]
    Bitstring(String),
}

/// Normalized complex amplitudes over `2^n` basis states.
#[derive(Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl std::fmt::Debug for Statevector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Statevector(n={}, {:?})", self.n, &self.amps[..self.amps.len().min(16)])
    }
}

fn check_qubits(what: &'static str, n: usize) -> Result<(), SolverError> {
    if n > MAX_STATE_QUBITS {
        return Err(SolverError::TooLarge {
            what,
            got: n,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

impl Statevector {
    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(n <= MAX_STATE_QUBITS, "statevector of {n} qubits");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// Basis state from a `0`/`1` string, leftmost character = qubit 0.
    pub fn from_bitstring(bits: &str) -> Result<Self, SolverError> {
        let n = bits.len();
        check_qubits("bitstring", n)?;
        let mut index = 0usize;
        for ch in bits.chars() {
            index = (index << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(SolverError::Bitstring(bits.to_string())),
                };
        }
        Ok(Self::basis(n, index))
    }

    /// Wrap raw amplitudes (normalized here). Length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        let len = amps.len();
        assert!(len.is_power_of_two(), "amplitude count {len} is not a power of two");
        let mut s = Self {
            n: len.trailing_zeros() as usize,
            amps,
        };
        s.normalize();
        s
    }

    /// Gaussian random state from `rng`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let amps = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_amplitudes(amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn normalize(&mut self) {
        let nrm = self.norm();
        assert!(nrm > 0.0, "cannot normalize the zero vector");
        for a in &mut self.amps {
            *a /= nrm;
        }
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        assert_eq!(self.n, other.n);
        inner(&self.amps, &other.amps)
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn overlap(&self, other: &Statevector) -> f64 {
        self.inner(other).norm()
    }

    /// Largest amplitude difference after removing the global phase.
    pub fn distance_up_to_phase(&self, other: &Statevector) -> f64 {
        let ip = self.inner(other);
        let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }

    /// Relabel qubits: position `k` of the result carries qubit `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Statevector, SolverError> {
        check_permutation(perm, self.n)?;
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (old, &a) in self.amps.iter().enumerate() {
            let mut new = 0usize;
            for (k, &q) in perm.iter().enumerate() {
                if old >> (n - 1 - q) & 1 == 1 {
                    new |= 1 << (n - 1 - k);
                }
            }
            out[new] = a;
        }
        Ok(Statevector { n, amps: out })
    }

    /// Apply a single Pauli string in place (phase included).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        assert_eq!(p.n(), self.n);
        let (x, z) = p.masks();
        let ph = I_POW[p.phase_exp() as usize];
        let src = std::mem::take(&mut self.amps);
        let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
        for (s, &a) in src.iter().enumerate() {
            let sign = if (z & s as u64).count_ones() & 1 == 1 { -ph } else { ph };
            out[s ^ x as usize] = a * sign;
        }
        self.amps = out;
    }

    /// `exp(-i θ/2 P)` for a Hermitian Pauli string `P`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, theta: f64) {
        if theta == 0.0 {
            return;
        }
        let mut pp = self.clone();
        pp.apply_pauli(p);
        let c = (theta / 2.0).cos();
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        for (a, b) in self.amps.iter_mut().zip(&pp.amps) {
            *a = *a * c + b * s;
        }
    }

    /// `R_y(θ) = exp(-i θ Y/2)` on `qubit`.
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) {
        let bit = 1usize << (self.n - 1 - qubit);
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = a0 * c - a1 * s;
                self.amps[i | bit] = a0 * s + a1 * c;
            }
        }
    }

    /// `R_z(θ) = exp(-i θ Z/2)` on `qubit`.
    pub fn apply_rz(&mut self, qubit: usize, theta: f64) {
        let bit = 1usize << (self.n - 1 - qubit);
        let p0 = Complex64::from_polar(1.0, -theta / 2.0);
        let p1 = p0.conj();
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & bit == 0 { p0 } else { p1 };
        }
    }

    /// Controlled `R_x(θ) = exp(-i θ X/2)` on `target` when `control` is 1.
    pub fn apply_crx(&mut self, control: usize, target: usize, theta: f64) {
        assert_ne!(control, target);
        let cb = 1usize << (self.n - 1 - control);
        let tb = 1usize << (self.n - 1 - target);
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | tb]);
                self.amps[i] = a0 * c + a1 * s;
                self.amps[i | tb] = a0 * s + a1 * c;
            }
        }
    }

    /// Apply one factor `F = (σ + τ)/√2`.
    pub fn apply_factor(&mut self, f: &CliffordFactor) {
        let mut a = self.clone();
        a.apply_pauli(f.sigma());
        self.apply_pauli(f.tau());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (x, y) in self.amps.iter_mut().zip(&a.amps) {
            *x = (*x + y) * r;
        }
    }
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `C ψ` for `C = F_1 F_2 ... F_k` (so `F_k` acts first).
pub fn apply_clifford_to_state(factors: &[CliffordFactor], psi: &Statevector) -> Statevector {
    let mut out = psi.clone();
    for f in factors.iter().rev() {
        out.apply_factor(f);
    }
    out
}

/// `C† ψ` for `C = F_1 F_2 ... F_k` (so `F_1` acts first).
pub fn apply_clifford_dagger_to_state(factors: &[CliffordFactor], psi: &Statevector) -> Statevector {
    let mut out = psi.clone();
    for f in factors {
        out.apply_factor(f);
    }
    out
}

pub fn permute_qubits(psi: &Statevector, perm: &[usize]) -> Result<Statevector, SolverError> {
    psi.permute(perm)
}

/// A Pauli sum compiled for repeated application: terms grouped by X mask.
///
/// Each term contributes `c · i^k · (-1)^{z·s}` to its group's diagonal. The
/// index `s` is split into high and low bits; every term keeps a signed table
/// over the low bits, so a group's diagonal on one block of `2^LOW` indices is
/// a sum of whole tables with signs fixed by the high bits.
#[derive(Debug, Clone)]
pub struct CompiledSum {
    n: usize,
    low: usize,
    groups: Vec<Group>,
}

#[derive(Debug, Clone)]
struct Group {
    x: usize,
    /// High-bit Z masks of the real and imaginary terms.
    re_hi: Vec<usize>,
    im_hi: Vec<usize>,
    /// Concatenated low-bit tables, `2^low` values per term.
    re_tab: Vec<f64>,
    im_tab: Vec<f64>,
}

const LOW_BITS: usize = 8;

fn accumulate(hi: usize, masks: &[usize], tables: &[f64], buf: &mut [f64]) {
    buf.fill(0.0);
    for (zh, t) in masks.iter().zip(tables.chunks_exact(buf.len())) {
        if (zh & hi).count_ones() & 1 == 1 {
            buf.iter_mut().zip(t).for_each(|(b, v)| *b -= v);
        } else {
            buf.iter_mut().zip(t).for_each(|(b, v)| *b += v);
        }
    }
}

impl CompiledSum {
    pub fn new(h: &PauliSum) -> Result<Self, SolverError> {
        check_qubits("Pauli sum", h.n())?;
        let low = h.n().min(LOW_BITS);
        let lo_mask = (1usize << low) - 1;
        let mut groups: indexmap::IndexMap<usize, Group> = indexmap::IndexMap::new();
        for (p, c) in h.iter() {
            let (x, z) = p.masks();
            let (x, z) = (x as usize, z as usize);
            let g = groups.entry(x).or_insert_with(|| Group {
                x,
                re_hi: Vec::new(),
                im_hi: Vec::new(),
                re_tab: Vec::new(),
                im_tab: Vec::new(),
            });
            let v = I_POW[p.phase_exp() as usize] * c;
            let (hi, tab, val) = if p.phase_exp() % 2 == 0 {
                (&mut g.re_hi, &mut g.re_tab, v.re)
            } else {
                (&mut g.im_hi, &mut g.im_tab, v.im)
            };
            hi.push(z >> low);
            tab.extend((0..1usize << low).map(|l| if (z & lo_mask & l).count_ones() & 1 == 1 { -val } else { val }));
        }
        Ok(Self {
            n: h.n(),
            low,
            groups: groups.into_values().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `out = H psi`.
    pub fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(psi.len(), 1 << self.n);
        assert_eq!(out.len(), psi.len());
        out.fill(Complex64::new(0.0, 0.0));
        let block = 1usize << self.low;
        let mut dre = vec![0.0; block];
        let mut dim = vec![0.0; block];
        for g in &self.groups {
            for hi in 0..psi.len() >> self.low {
                let base = hi << self.low;
                accumulate(hi, &g.re_hi, &g.re_tab, &mut dre);
                let src = &psi[base..base + block];
                if g.im_hi.is_empty() {
                    for (l, (&a, &d)) in src.iter().zip(&dre).enumerate() {
                        out[(base + l) ^ g.x] += a * d;
                    }
                } else {
                    accumulate(hi, &g.im_hi, &g.im_tab, &mut dim);
                    for (l, &a) in src.iter().enumerate() {
                        out[(base + l) ^ g.x] += a * Complex64::new(dre[l], dim[l]);
                    }
                }
            }
        }
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply_into(psi, &mut out);
        out
    }

    /// Real part of `<psi|H|psi>` and the discarded imaginary part.
    pub fn expectation(&self, psi: &[Complex64]) -> (f64, f64) {
        let hp = self.apply(psi);
        let e = inner(psi, &hp);
        (e.re, e.im)
    }
}

/// `H ψ` without normalizing the result.
pub fn apply_pauli_sum(h: &PauliSum, psi: &Statevector) -> Result<Vec<Complex64>, SolverError> {
    if h.n() != psi.n() {
        return Err(PauliError::Dimension { left: h.n(), right: psi.n() }.into());
    }
    Ok(CompiledSum::new(h)?.apply(psi.amplitudes()))
}

/// Ground energy and state with the default solver settings and the given
/// residual tolerance.
pub fn ground_state(h: &PauliSum, tol: f64) -> Result<(f64, Statevector), SolverError> {
    let cfg = LanczosConfig {
        tol,
        ..LanczosConfig::default()
    };
    let g = ground_state_with(h, &cfg)?;
    Ok((g.energy, g.state))
}
