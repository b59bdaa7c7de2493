//! Replays the checked-in fuzz corpus through the same checks as the fuzz targets.

use std::fs;
use std::path::{Path, PathBuf};

use hct_core::cli::{parse_permutation, parse_run_config};
use hct_core::hct::{HctTransform, ThresholdSchedule};
use hct_core::pauli::{emit_hamiltonian, parse_hamiltonian, PauliString};
use hct_core::vqe::parse_pool;

fn corpus(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus for {target}");
    files.into_iter().map(|p| (p.clone(), fs::read(&p).unwrap())).collect()
}

fn texts(target: &str) -> Vec<(PathBuf, String)> {
    corpus(target)
        .into_iter()
        .filter_map(|(p, b)| String::from_utf8(b).ok().map(|s| (p, s)))
        .collect()
}

#[test]
fn hamiltonian_json() {
    let mut parsed = 0;
    for (path, text) in texts("hamiltonian_json") {
        if let Ok(h) = parse_hamiltonian(&text) {
            let again = parse_hamiltonian(&emit_hamiltonian(&h.sum, Some(&h.metadata))).unwrap();
            assert!(again.sum == h.sum, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn hct_json() {
    let mut parsed = 0;
    for (path, text) in texts("hct_json") {
        if let Ok(t) = HctTransform::from_json(&text) {
            assert_eq!(HctTransform::from_json(&t.to_json()).unwrap(), t, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn run_config() {
    let mut parsed = 0;
    for (_, text) in texts("run_config") {
        if let Ok(c) = parse_run_config(&text, Path::new("/base")) {
            assert!(c.budget >= 1 && !c.seeds.is_empty() && c.noise_std >= 0.0);
            parsed += 1;
        }
    }
    assert_eq!(parsed, 3);
}

#[test]
fn pauli_label() {
    for (_, text) in texts("pauli_label") {
        if let Ok(p) = text.parse::<PauliString>() {
            assert_eq!(p.to_string().parse::<PauliString>().unwrap(), p);
        }
    }
}

#[test]
fn schedule() {
    for (_, text) in texts("schedule") {
        if let Ok(s) = ThresholdSchedule::parse(&text) {
            assert!(s.thresholds().windows(2).all(|w| w[0] > w[1]));
            assert_eq!(ThresholdSchedule::parse(&s.to_string()).unwrap(), s);
        }
    }
}

#[test]
fn permutation() {
    let mut parsed = 0;
    for (_, bytes) in corpus("permutation") {
        let (&n, rest) = bytes.split_first().unwrap();
        if let Ok(p) = parse_permutation(std::str::from_utf8(rest).unwrap(), n as usize % 32) {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..p.len()).collect::<Vec<_>>());
            parsed += 1;
        }
    }
    assert_eq!(parsed, 2);
}

#[test]
fn pool_json() {
    for (_, text) in texts("pool_json") {
        let p = parse_pool(&text).unwrap();
        assert_eq!(parse_pool(&p.to_json_value().to_string()).unwrap(), p);
    }
}
