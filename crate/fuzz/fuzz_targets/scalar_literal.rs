#![no_main]

//! Fuzz the scalar-literal parser in all three modes; parsed scalars get
//! exercised through inversion, powers and the q-integer test.

use coideal_core::scalar::{parse_scalar, ScalarMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for mode in [
        ScalarMode::RootOfUnity,
        ScalarMode::GenericQ,
        ScalarMode::Rational,
    ] {
        if let Ok(s) = parse_scalar(text, mode) {
            // round trip through the canonical rendering
            let again = parse_scalar(&s.to_string(), mode).expect("display is parseable");
            assert_eq!(again, s);
            if let Ok(inv) = s.inv() {
                assert!(s.mul(&inv).is_one());
            }
            let _ = s.pow_i64(3);
            let _ = s.q_integer_is_zero(6);
        }
    }
});
