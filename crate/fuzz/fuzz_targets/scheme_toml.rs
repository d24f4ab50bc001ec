#![no_main]

//! Fuzz the TOML scheme-document parser and the small-document
//! construction path.

use coideal_core::io::{parse_scheme_toml, scheme_from_document, SchemeDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_scheme_toml(text) else {
        return;
    };
    let small = match &doc {
        SchemeDocument::Braiding { rank, .. } => *rank <= 6,
        SchemeDocument::Explicit { objects, .. } => {
            objects.len() <= 8 && objects.iter().all(|o| o.cartan.len() <= 6)
        }
    };
    if small {
        let _ = scheme_from_document(&doc, 16, 4);
    }
});
