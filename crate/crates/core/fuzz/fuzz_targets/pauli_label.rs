#![no_main]

use hct_core::pauli::PauliString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(p) = text.parse::<PauliString>() {
            let q: PauliString = p.to_string().parse().expect("printed label parses");
            assert_eq!(p, q);
        }
    }
});
