#![no_main]

use hct_core::cli::parse_permutation;
use libfuzzer_sys::fuzz_target;

// first byte: qubit count, rest: permutation text
fuzz_target!(|bytes: &[u8]| {
    let Some((&n, rest)) = bytes.split_first() else {
        return;
    };
    let n = n as usize % 32;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(p) = parse_permutation(text, n) {
            let mut seen = vec![false; n];
            for q in p {
                assert!(!seen[q]);
                seen[q] = true;
            }
        }
    }
});
