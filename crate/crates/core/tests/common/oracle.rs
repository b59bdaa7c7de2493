//! Dense-matrix and brute-force checks of the Pauli, GF(2) and symmetry layers.

use hct_core::gf2::{BitMatrix, BitVec};
use hct_core::pauli::{PauliString, PauliSum};
use hct_core::symmetry::{
    conjugate_sum, count_symmetries, find_symmetries, search_symmetries, sectors, taper, CliffordFactor,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn commutator_is_zero(a: &CMat, b: &CMat) -> bool {
    max_diff(&(a * b), &(b * a)) < 1e-12
}

fn check_product(p: &PauliString, q: &PauliString) -> Check {
    let (mp, mq) = (oracle_matrix(p), oracle_matrix(q));
    let d = max_diff(&oracle_matrix(&(p * q)), &(&mp * &mq));
    ensure(d <= 1e-14, || format!("matrix({p} * {q}) differs by {d:e}"))?;
    let c = p.commutes(q).map_err(|e| e.to_string())?;
    ensure(c == commutator_is_zero(&mp, &mq), || format!("commutes({p}, {q}) = {c}"))
}

/// Products and commutation of every pair of letter strings for n ≤ 3.
pub fn exhaustive_products() -> Check {
    for n in 1..=3 {
        let labels: Vec<PauliString> = all_labels(n).iter().map(|l| l.parse().unwrap()).collect();
        for p in &labels {
            for q in &labels {
                check_product(p, q)?;
            }
        }
    }
    Ok(())
}

/// Random phased strings up to n = 8, plus associativity and Hermitian squares.
pub fn randomized_products() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 4..=8 {
        for _ in 0..24 {
            let (p, q) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng));
            check_product(&p, &q)?;
        }
    }
    for n in 1..=16 {
        for _ in 0..20 {
            let (a, b, c) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng), random_pauli(n, &mut rng));
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("({a} {b}) {c} != {a} ({b} {c})"))?;
            let h: PauliString = random_label(n, &mut rng).parse().unwrap();
            let sq = &h * &h;
            ensure(sq.phase_exp() == 0 && sq.is_identity(), || format!("{h} squared is {sq}"))?;
        }
    }
    Ok(())
}

fn random_factor(n: usize, rng: &mut impl Rng) -> CliffordFactor {
    loop {
        let s: PauliString = random_label(n, rng).parse().unwrap();
        let t: PauliString = random_label(n, rng).parse().unwrap();
        if !s.commutes(&t).unwrap() {
            return CliffordFactor::new(s, t).unwrap();
        }
    }
}

fn factor_matrix(f: &CliffordFactor) -> CMat {
    (oracle_matrix(f.sigma()) + oracle_matrix(f.tau())) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// `F P F` against the dense product for every string (n ≤ 3) and random
/// strings (n ≤ 6); `conjugate_sum` against dense conjugation of random sums.
pub fn clifford_conjugation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=6 {
        for _ in 0..6 {
            let f = random_factor(n, &mut rng);
            let mf = factor_matrix(&f);
            ensure(max_diff(&(&mf * &mf), &CMat::identity(1 << n, 1 << n)) < 1e-12, || {
                format!("factor ({} + {})/sqrt2 does not square to 1", f.sigma(), f.tau())
            })?;
            let targets: Vec<PauliString> = if n <= 3 {
                all_labels(n).iter().map(|l| l.parse().unwrap()).collect()
            } else {
                (0..20).map(|_| random_pauli(n, &mut rng)).collect()
            };
            for p in &targets {
                let want = &mf * oracle_matrix(p) * &mf;
                let d = max_diff(&oracle_matrix(&f.conjugate(p)), &want);
                ensure(d < 1e-12, || format!("conjugating {p} by ({}, {}) off by {d:e}", f.sigma(), f.tau()))?;
            }
            let h = random_sum(n, 8, &mut rng);
            let hc = conjugate_sum(&h, std::slice::from_ref(&f)).map_err(|e| e.to_string())?;
            let d = max_diff(&oracle_sum(&hc), &(&mf * oracle_sum(&h) * &mf));
            ensure(d < 1e-12, || format!("conjugate_sum off by {d:e} at n = {n}"))?;
            let back = conjugate_sum(&hc, std::slice::from_ref(&f)).map_err(|e| e.to_string())?;
            ensure(back.sorted() == h.sorted(), || "double conjugation is not the identity".into())?;
            ensure(hc.l1_norm() <= h.l1_norm() + 1e-12, || "conjugation increased the l1 norm".into())?;
        }
    }
    Ok(())
}

fn brute_force_nullity(m: &BitMatrix) -> usize {
    let cols = m.cols();
    (0..1u64 << cols)
        .filter(|&v| {
            let x = BitVec::from_indices(cols, (0..cols).filter(|i| v >> i & 1 == 1));
            m.mul_vec(&x).is_zero()
        })
        .count()
}

/// Rank-nullity, kernel vectors in the null space, and kernel size against
/// enumeration of all vectors.
pub fn gf2_kernels() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let (rows, cols) = (rng.gen_range(0..8), rng.gen_range(1..=10));
        let dense: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| u8::from(rng.gen_bool(0.4))).collect())
            .collect();
        let m = if rows == 0 {
            BitMatrix::zeros(0, cols)
        } else {
            BitMatrix::from_dense(&dense)
        };
        let kernel = m.kernel_basis();
        ensure(m.rank() + kernel.len() == cols, || format!("rank-nullity fails for {dense:?}"))?;
        for v in &kernel {
            ensure(m.mul_vec(v).is_zero(), || format!("kernel vector not null for {dense:?}"))?;
        }
        let span = BitMatrix::from_rows(cols, &kernel);
        ensure(span.rank() == kernel.len(), || "kernel basis is dependent".into())?;
        let count = brute_force_nullity(&m);
        ensure(count == 1 << kernel.len(), || format!("{count} null vectors, kernel dim {}", kernel.len()))?;
    }
    Ok(())
}

/// For n ≤ 4, every one of the 4^n strings is tested for commuting with each
/// term via dense matrices; the counts give the commutant and its Z-type part.
pub fn commutant_enumeration() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=4 {
        for _ in 0..8 {
            let h = random_sum(n, rng.gen_range(1..=2 * n), &mut rng);
            let terms: Vec<CMat> = h.iter().map(|(p, _)| oracle_matrix(p)).collect();
            let commuting: Vec<String> = all_labels(n)
                .into_iter()
                .filter(|l| {
                    let m = oracle_matrix(&l.parse().unwrap());
                    terms.iter().all(|t| commutator_is_zero(&m, t))
                })
                .collect();
            let z_type = commuting.iter().filter(|l| l.chars().all(|c| c == 'I' || c == 'Z')).count();
            let s = search_symmetries(&h);
            ensure(commuting.len() == 1 << s.commutant_dim, || {
                format!("{} commuting strings, commutant dim {}", commuting.len(), s.commutant_dim)
            })?;
            ensure(z_type == 1 << count_symmetries(&h), || {
                format!("{z_type} Z-type commuting strings, count {}", count_symmetries(&h))
            })?;
            let basis = find_symmetries(&h);
            ensure(basis.len() == count_symmetries(&h), || "basis size differs from count".into())?;
            for g in &basis.generators {
                let m = oracle_matrix(g);
                ensure(terms.iter().all(|t| commutator_is_zero(&m, t)), || format!("generator {g} fails to commute"))?;
            }
        }
    }
    Ok(())
}

/// Random sum restricted to terms commuting with the given Z strings.
fn symmetric_sum(n: usize, zs: &[&str], rng: &mut impl Rng) -> PauliSum {
    let gens: Vec<PauliString> = zs.iter().map(|z| z.parse().unwrap()).collect();
    let mut h = PauliSum::new(n);
    while h.len() < 3 * n {
        let p: PauliString = random_label(n, rng).parse().unwrap();
        if gens.iter().all(|g| g.commutes(&p).unwrap()) {
            h.add(rng.gen_range(-1.0..1.0), &p).unwrap();
        }
    }
    h
}

/// The union of tapered sector spectra equals the full spectrum.
pub fn tapering_spectra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for zs in [&["ZZII", "IIZZ"][..], &["ZZZZ"], &["ZIZI", "IZIZ"], &["ZZIII", "IZZII", "IIIZZ"]] {
        let n = zs[0].len();
        let h = symmetric_sum(n, zs, &mut rng);
        let basis = find_symmetries(&h);
        let hp = conjugate_sum(&h, &basis.factors()).map_err(|e| e.to_string())?;
        let mut tapered = Vec::new();
        for s in sectors(basis.len()) {
            let t = taper(&hp, &basis, &s).map_err(|e| e.to_string())?;
            tapered.extend(sorted_eigenvalues(&oracle_sum(&t)));
        }
        tapered.sort_by(f64::total_cmp);
        let full = sorted_eigenvalues(&oracle_sum(&h));
        let d = full.iter().zip(&tapered).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        ensure(full.len() == tapered.len() && d < 1e-10, || format!("tapered spectrum off by {d:e} for {zs:?}"))?;
    }
    Ok(())
}

pub const CHECKS: [(&str, fn() -> Check); 7] = [
    ("exhaustive products", exhaustive_products),
    ("randomized products", randomized_products),
    ("clifford conjugation", clifford_conjugation),
    ("gf2 kernels", gf2_kernels),
    ("commutant enumeration", commutant_enumeration),
    ("tapering spectra", tapering_spectra),
    ("dense builder", dense_builder),
];

/// The library's own dense builder agrees with the oracle.
pub fn dense_builder() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in 1..=6 {
        let h = random_sum(n, 10, &mut rng);
        let d = max_diff(&hct_core::dense::sum_matrix(&h), &oracle_sum(&h));
        ensure(d < 1e-14, || format!("dense builder off by {d:e}"))?;
    }
    Ok(())
}
