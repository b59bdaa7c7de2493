#![no_main]

use hct_core::pauli::{emit_hamiltonian, parse_hamiltonian};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(h) = parse_hamiltonian(text) {
            let out = emit_hamiltonian(&h.sum, Some(&h.metadata));
            let again = parse_hamiltonian(&out).expect("emitted document parses");
            assert!(again.sum == h.sum);
        }
    }
});
