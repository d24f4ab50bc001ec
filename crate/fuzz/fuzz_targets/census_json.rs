#![no_main]

//! Fuzz the census-report reader used for round-tripping machine output.

use coideal_core::io::parse_census_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = parse_census_json(text) {
        // well-formed reports stay internally consistent under re-rendering
        let rendered = coideal_core::io::to_canonical_json(&report);
        let again = parse_census_json(&rendered).expect("canonical JSON re-parses");
        assert_eq!(again, report);
    }
});
