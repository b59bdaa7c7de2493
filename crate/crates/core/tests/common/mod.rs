#![allow(dead_code)]

pub mod oracle;

use hct_core::pauli::{PauliString, PauliSum};
use hct_core::registry::Registry;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(ch: char) -> CMat {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let i = c(0.0, 1.0);
    let v = match ch {
        'I' => [l, o, o, l],
        'X' => [o, l, l, o],
        'Y' => [o, -i, i, o],
        'Z' => [l, o, o, -l],
        _ => panic!("letter {ch}"),
    };
    CMat::from_row_slice(2, 2, &v)
}

/// Kronecker product of the letter matrices (qubit 0 leftmost, most significant)
/// times the phase implied by the printed form.
pub fn oracle_matrix(p: &PauliString) -> CMat {
    let text = p.to_string();
    let (phase, body) = if let Some(b) = text.strip_prefix("-i") {
        (c(0.0, -1.0), b)
    } else if let Some(b) = text.strip_prefix('i') {
        (c(0.0, 1.0), b)
    } else if let Some(b) = text.strip_prefix('-') {
        (c(-1.0, 0.0), b)
    } else {
        (c(1.0, 0.0), text.as_str())
    };
    let mut m = CMat::from_element(1, 1, phase);
    for ch in body.chars() {
        m = m.kronecker(&letter_matrix(ch));
    }
    m
}

pub fn oracle_sum(h: &PauliSum) -> CMat {
    let d = 1usize << h.n();
    let mut m = CMat::zeros(d, d);
    for (p, coeff) in h.iter() {
        m += oracle_matrix(p) * c(coeff, 0.0);
    }
    m
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0, |m, v| m.max(v.norm()))
}

pub fn sorted_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Every letter string of length `n`.
pub fn all_labels(n: usize) -> Vec<String> {
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let mut s = vec!['I'; n];
            for ch in s.iter_mut().rev() {
                *ch = LETTERS[k % 4];
                k /= 4;
            }
            s.into_iter().collect()
        })
        .collect()
}

pub fn random_label(n: usize, rng: &mut impl Rng) -> String {
    (0..n).map(|_| LETTERS[rng.gen_range(0..4)]).collect()
}

pub fn random_pauli(n: usize, rng: &mut impl Rng) -> PauliString {
    let prefix = ["", "i", "-", "-i"][rng.gen_range(0..4)];
    format!("{prefix}{}", random_label(n, rng)).parse().unwrap()
}

pub fn random_sum(n: usize, terms: usize, rng: &mut impl Rng) -> PauliSum {
    let mut h = PauliSum::new(n);
    for _ in 0..terms {
        let p: PauliString = random_label(n, rng).parse().unwrap();
        h.add(rng.gen_range(-1.0..1.0), &p).unwrap();
    }
    h
}

pub fn sum_from(n: usize, terms: &[(&str, f64)]) -> PauliSum {
    let mut h = PauliSum::new(n);
    for (l, c) in terms {
        h.add(*c, &l.parse::<PauliString>().unwrap()).unwrap();
    }
    h
}

pub fn registry() -> Registry {
    Registry::workspace().expect("fixture registry")
}
