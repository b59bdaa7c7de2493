#![no_main]

use hct_core::hct::HctTransform;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(t) = HctTransform::from_json(text) {
            let again = HctTransform::from_json(&t.to_json()).expect("emitted transform parses");
            assert_eq!(again, t);
        }
    }
});
