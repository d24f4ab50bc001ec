#![no_main]

//! Fuzz the compact root-notation parser (`1^k2^l...`).

use coideal_core::io::parse_root_notation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for rank in [1usize, 2, 3, 9] {
        if let Ok(v) = parse_root_notation(text, rank) {
            assert_eq!(v.rank(), rank);
        }
    }
});
