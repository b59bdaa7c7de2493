#![no_main]

use hct_core::vqe::parse_pool;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(p) = parse_pool(text) {
            let again = parse_pool(&p.to_json_value().to_string()).expect("emitted pool parses");
            assert_eq!(again, p);
        }
    }
});
