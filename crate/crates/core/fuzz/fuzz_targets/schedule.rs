#![no_main]

use hct_core::hct::ThresholdSchedule;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(text) = std::str::from_utf8(bytes) {
        if let Ok(s) = ThresholdSchedule::parse(text) {
            assert!(s.thresholds().windows(2).all(|w| w[0] > w[1]));
            if !s.is_empty() {
                assert_eq!(ThresholdSchedule::parse(&s.to_string()).expect("printed schedule parses"), s);
            }
        }
    }
});
