//! Z2 symmetry generators, symmetry-qubit assignment, tapering Clifford
//! factors and symbolic conjugation.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::{PauliError, PauliString, PauliSum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("invalid Clifford factor: sigma {sigma} and tau {tau} commute")]
    InvalidFactor { sigma: String, tau: String },
    #[error("generator {0} is not Z-type")]
    NotZType(String),
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("term {term} acts as {letter} on symmetry qubit {qubit}; input is not block-diagonal")]
    NotBlockDiagonal { term: String, qubit: usize, letter: char },
    #[error("sector has {got} entries, expected {want}")]
    SectorLength { got: usize, want: usize },
    #[error("sector entries must be +1 or -1, got {0}")]
    SectorValue(i8),
}

/// Z-type symmetry generators with their pivot qubits and partner X operators.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryBasis {
    pub generators: Vec<PauliString>,
    pub symmetry_qubits: Vec<usize>,
    pub sigma_ops: Vec<PauliString>,
}

impl SymmetryBasis {
    pub fn empty() -> Self {
        Self {
            generators: Vec::new(),
            symmetry_qubits: Vec::new(),
            sigma_ops: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn factors(&self) -> Vec<CliffordFactor> {
        self.sigma_ops
            .iter()
            .zip(&self.generators)
            .map(|(s, t)| CliffordFactor::new(s.clone(), t.clone()).expect("basis pairs anticommute"))
            .collect()
    }

    /// σ_j anticommutes with τ_k exactly when j == k.
    pub fn has_pairing_pattern(&self) -> bool {
        self.sigma_ops.iter().enumerate().all(|(j, s)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(k, t)| s.commutes_unchecked(t) == (j != k))
        })
    }
}

/// Result of a symmetry search, with the number of commutant directions that
/// could not be brought to Z-type.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrySearch {
    pub basis: SymmetryBasis,
    /// Dimension of the full commutant (all Pauli strings commuting with every term).
    pub commutant_dim: usize,
    /// Commutant directions with X support, left out of the basis.
    pub rejected: usize,
}

/// Rows `(z | x)` of each term, so that `G v = 0` for `v = (x | z)` means `v` commutes with it.
fn symplectic_system(h: &PauliSum) -> BitMatrix {
    let rows: Vec<BitVec> = h.iter().map(|(p, _)| p.z_bits().concat(p.x_bits())).collect();
    BitMatrix::from_rows(2 * h.n(), &rows)
}

/// Full symmetry search including the commutant diagnostics.
pub fn search_symmetries(h: &PauliSum) -> SymmetrySearch {
    let n = h.n();
    let kernel = symplectic_system(h).kernel_basis();
    // rref over columns (x | z): rows pivoted in the z block have no x part and
    // span exactly the Z-type commutant.
    let z_rows: Vec<BitVec> = kernel
        .iter()
        .filter(|v| v.first_one().is_some_and(|p| p >= n))
        .map(|v| v.slice(n, n))
        .collect();
    let gens: Vec<PauliString> = z_rows
        .iter()
        .map(|z| PauliString::from_bits(BitVec::zeros(n), z.clone(), 0).expect("sizes agree"))
        .collect();
    let basis = assign_symmetry_qubits(&gens).expect("z rows of an rref kernel are independent");
    SymmetrySearch {
        commutant_dim: kernel.len(),
        rejected: kernel.len() - basis.len(),
        basis,
    }
}

/// Independent Z-type generators commuting with every term of `h`.
pub fn find_symmetries(h: &PauliSum) -> SymmetryBasis {
    search_symmetries(h).basis
}

/// Number of independent Z-type symmetries of `h`.
pub fn count_symmetries(h: &PauliSum) -> usize {
    let rows: Vec<BitVec> = h.iter().map(|(p, _)| p.x_bits().clone()).collect();
    h.n() - BitMatrix::from_rows(h.n(), &rows).rank()
}

/// Canonicalize Z-type generators by rref and pair each with an X on its
/// lowest-index pivot qubit.
pub fn assign_symmetry_qubits(generators: &[PauliString]) -> Result<SymmetryBasis, SymmetryError> {
    let Some(first) = generators.first() else {
        return Ok(SymmetryBasis::empty());
    };
    let n = first.n();
    for g in generators {
        if g.n() != n {
            return Err(PauliError::Dimension { left: n, right: g.n() }.into());
        }
        if !g.is_z_type() {
            return Err(SymmetryError::NotZType(g.to_string()));
        }
    }
    let rows: Vec<BitVec> = generators.iter().map(|g| g.z_bits().clone()).collect();
    let (r, pivots) = BitMatrix::from_rows(n, &rows).rref();
    if pivots.len() != generators.len() {
        return Err(SymmetryError::Dependent);
    }
    let gens: Vec<PauliString> = (0..pivots.len())
        .map(|i| PauliString::from_bits(BitVec::zeros(n), r.row(i), 0).expect("sizes agree"))
        .collect();
    let sigmas = pivots.iter().map(|&q| PauliString::x_on(n, &[q])).collect();
    Ok(SymmetryBasis {
        generators: gens,
        symmetry_qubits: pivots,
        sigma_ops: sigmas,
    })
}

/// `F = (σ + τ)/√2` for anticommuting Hermitian σ, τ. `F` is Hermitian and squares to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordFactor {
    sigma: PauliString,
    tau: PauliString,
    sigma_tau: PauliString,
}

impl CliffordFactor {
    pub fn new(sigma: PauliString, tau: PauliString) -> Result<Self, SymmetryError> {
        if sigma.commutes(&tau)? {
            return Err(SymmetryError::InvalidFactor {
                sigma: sigma.to_string(),
                tau: tau.to_string(),
            });
        }
        if !sigma.is_hermitian() {
            return Err(PauliError::NonHermitian { phase: sigma.letter_phase() }.into());
        }
        if !tau.is_hermitian() {
            return Err(PauliError::NonHermitian { phase: tau.letter_phase() }.into());
        }
        let sigma_tau = &sigma * &tau;
        Ok(Self { sigma, tau, sigma_tau })
    }

    pub fn sigma(&self) -> &PauliString {
        &self.sigma
    }

    pub fn tau(&self) -> &PauliString {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    /// `F P F`, exact including phase.
    pub fn conjugate(&self, p: &PauliString) -> PauliString {
        let cs = p.commutes_unchecked(&self.sigma);
        let ct = p.commutes_unchecked(&self.tau);
        match (cs, ct) {
            (true, true) => p.clone(),
            (false, false) => negate(p),
            (false, true) => &self.sigma_tau * p,
            (true, false) => negate(&(&self.sigma_tau * p)),
        }
    }
}

fn negate(p: &PauliString) -> PauliString {
    PauliString::from_bits(p.x_bits().clone(), p.z_bits().clone(), p.phase_exp() + 2).expect("sizes agree")
}

/// `F P F` for Hermitian `P`, as a sign and a Hermitian letter-form string.
pub fn conjugate_pauli(p: &PauliString, f: &CliffordFactor) -> Result<(f64, PauliString), SymmetryError> {
    if p.n() != f.n() {
        return Err(PauliError::Dimension { left: p.n(), right: f.n() }.into());
    }
    let (s_in, p) = p.to_hermitian()?;
    let (s_out, q) = f.conjugate(&p).to_hermitian()?;
    Ok((s_in * s_out, q))
}

/// `C† H C` with `C = F_1 F_2 ... F_k`: `F_1` is applied to each term first.
pub fn conjugate_sum(h: &PauliSum, factors: &[CliffordFactor]) -> Result<PauliSum, SymmetryError> {
    for f in factors {
        if f.n() != h.n() {
            return Err(PauliError::Dimension { left: h.n(), right: f.n() }.into());
        }
    }
    let mut out = PauliSum::new(h.n());
    for (p, c) in h.iter() {
        let mut q = p.clone();
        for f in factors {
            q = f.conjugate(&q);
        }
        out.add(c, &q)?;
    }
    Ok(out)
}

/// Fix each symmetry qubit's X eigenvalue to `sector[j]` and remove it.
pub fn taper(hp: &PauliSum, basis: &SymmetryBasis, sector: &[i8]) -> Result<PauliSum, SymmetryError> {
    if sector.len() != basis.len() {
        return Err(SymmetryError::SectorLength {
            got: sector.len(),
            want: basis.len(),
        });
    }
    if let Some(&bad) = sector.iter().find(|&&s| s != 1 && s != -1) {
        return Err(SymmetryError::SectorValue(bad));
    }
    let n = hp.n();
    let mut remove = vec![false; n];
    for &q in &basis.symmetry_qubits {
        if q >= n {
            return Err(PauliError::QubitRange { qubit: q, n }.into());
        }
        remove[q] = true;
    }
    let mut out = PauliSum::new(n - basis.len());
    for (p, c) in hp.iter() {
        let mut coeff = c;
        for (j, &q) in basis.symmetry_qubits.iter().enumerate() {
            match p.letter(q) {
                'I' => {}
                'X' => coeff *= sector[j] as f64,
                letter => {
                    return Err(SymmetryError::NotBlockDiagonal {
                        term: p.label(),
                        qubit: q,
                        letter,
                    })
                }
            }
        }
        out.add(coeff, &p.remove_qubits(&remove))?;
    }
    Ok(out)
}

/// All `2^k` sectors in lexicographic order, starting from all `+1`.
pub fn sectors(k: usize) -> Vec<Vec<i8>> {
    (0..1usize << k)
        .map(|m| (0..k).map(|j| if m >> (k - 1 - j) & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// True when every term acts as I or X on each listed qubit.
pub fn is_x_type_on(h: &PauliSum, qubits: &[usize]) -> bool {
    h.iter().all(|(p, _)| qubits.iter().all(|&q| !p.z_bits().get(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn labels(ps: &[PauliString]) -> Vec<String> {
        ps.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn classical_sum_gives_all_single_z() {
        let h = PauliSum::from_terms(3, [(1.0, "ZZI"), (1.0, "IZZ")]).unwrap();
        let b = find_symmetries(&h);
        assert_eq!(labels(&b.generators), ["ZII", "IZI", "IIZ"]);
        assert_eq!(b.symmetry_qubits, [0, 1, 2]);
    }

    #[test]
    fn xx_direction_is_rejected_not_counted() {
        let h = PauliSum::from_terms(2, [(1.0, "ZZ"), (0.5, "XX")]).unwrap();
        let s = search_symmetries(&h);
        assert_eq!(s.commutant_dim, 2);
        assert_eq!(labels(&s.basis.generators), ["ZZ"]);
        assert_eq!(s.rejected, 1);
    }

    #[test]
    fn full_pauli_set_on_a_qubit_blocks_it() {
        let h = PauliSum::from_terms(2, [(1.0, "XI"), (1.0, "YI"), (1.0, "ZI"), (1.0, "IZ")]).unwrap();
        let b = find_symmetries(&h);
        for g in &b.generators {
            assert_eq!(g.letter(0), 'I');
        }
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn assignment_examples() {
        let b = assign_symmetry_qubits(&[p("ZI"), p("IZ")]).unwrap();
        assert_eq!(b.symmetry_qubits, [0, 1]);
        assert_eq!(labels(&b.sigma_ops), ["XI", "IX"]);
        let b = assign_symmetry_qubits(&[p("ZZ")]).unwrap();
        assert_eq!(b.symmetry_qubits, [0]);
        assert_eq!(labels(&b.sigma_ops), ["XI"]);
        assert!(b.has_pairing_pattern());
        assert_eq!(assign_symmetry_qubits(&[p("ZZ"), p("ZZ")]), Err(SymmetryError::Dependent));
        assert!(matches!(assign_symmetry_qubits(&[p("XZ")]), Err(SymmetryError::NotZType(_))));
    }

    #[test]
    fn conjugation_examples() {
        let f = CliffordFactor::new(p("XI"), p("ZZ")).unwrap();
        assert_eq!(conjugate_pauli(&p("ZZ"), &f).unwrap(), (1.0, p("XI")));
        assert_eq!(conjugate_pauli(&p("XI"), &f).unwrap(), (1.0, p("ZZ")));
        assert_eq!(conjugate_pauli(&p("ZI"), &f).unwrap(), (1.0, p("XZ")));
        assert!(CliffordFactor::new(p("XI"), p("XX")).is_err());
    }

    #[test]
    fn conjugate_sum_examples() {
        let h = PauliSum::from_terms(2, [(1.0, "ZZ")]).unwrap();
        assert_eq!(conjugate_sum(&h, &[]).unwrap(), h);
        let f = CliffordFactor::new(p("XI"), p("ZZ")).unwrap();
        let out = conjugate_sum(&h, &[f]).unwrap();
        assert_eq!(out, PauliSum::from_terms(2, [(1.0, "XI")]).unwrap());
    }

    #[test]
    fn taper_examples() {
        let hp = PauliSum::from_terms(2, [(1.0, "XZ")]).unwrap();
        let b = assign_symmetry_qubits(&[p("ZI")]).unwrap();
        assert_eq!(taper(&hp, &b, &[1]).unwrap(), PauliSum::from_terms(1, [(1.0, "Z")]).unwrap());
        assert_eq!(taper(&hp, &b, &[-1]).unwrap(), PauliSum::from_terms(1, [(-1.0, "Z")]).unwrap());
        let bad = PauliSum::from_terms(2, [(1.0, "YZ")]).unwrap();
        assert!(matches!(taper(&bad, &b, &[1]), Err(SymmetryError::NotBlockDiagonal { .. })));
        assert!(matches!(taper(&hp, &b, &[1, 1]), Err(SymmetryError::SectorLength { .. })));
    }

    #[test]
    fn sector_order() {
        assert_eq!(sectors(2), vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
    }

    #[test]
    fn factor_matrix_is_an_involution() {
        let f = CliffordFactor::new(p("XI"), p("ZZ")).unwrap();
        let m = (dense::pauli_matrix(f.sigma()) + dense::pauli_matrix(f.tau())) / num_complex::Complex64::new(2f64.sqrt(), 0.0);
        let id = &m * &m;
        assert!((id - nalgebra::DMatrix::identity(4, 4)).norm() < 1e-14);
    }
}
