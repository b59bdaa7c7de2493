#![no_main]

use hct_core::cli::parse_run_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(c) = parse_run_config(text, std::path::Path::new("/base")) {
            assert!(c.budget >= 1 && !c.seeds.is_empty());
            assert!(c.noise_std >= 0.0);
        }
    }
});
