mod common;

use common::*;
use hct_core::dense;
use hct_core::vqe::bitstring_energy;

#[test]
fn registry_resolves_every_file() {
    let reg = registry();
    let names: Vec<&str> = reg.names().collect();
    assert!(names.len() >= 20);
    for name in reg.hamiltonian_names() {
        let h = reg.hamiltonian(name).unwrap();
        assert!(h.sum.iter().all(|(_, c)| c.is_finite()));
        assert_eq!(h.meta_str("hf_bitstring").unwrap().len(), h.sum.n(), "{name}");
    }
}

#[test]
fn recorded_energies_match() {
    let reg = registry();
    for name in reg.hamiltonian_names() {
        let h = reg.hamiltonian(name).unwrap();
        let hf = bitstring_energy(&h.sum, h.meta_str("hf_bitstring").unwrap()).unwrap();
        assert!((hf - h.meta_f64("hf_energy").unwrap()).abs() < 1e-8, "{name}");
        if let (Some(exact), true) = (h.meta_f64("exact_energy"), h.sum.n() <= 10) {
            let e = dense::eigenvalues(&h.sum)[0];
            assert!((e - exact).abs() < 1e-8, "{name}: {e} vs {exact}");
        }
    }
}
