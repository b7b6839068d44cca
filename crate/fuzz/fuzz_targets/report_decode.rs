#![no_main]

use libfuzzer_sys::fuzz_target;
use wander_core::report::Report;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = Report::from_json(text) {
            assert_eq!(Report::from_json(&r.to_json()).expect("re-encoded report decodes"), r);
        }
    }
});
