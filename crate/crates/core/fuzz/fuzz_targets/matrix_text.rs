#![no_main]

use libfuzzer_sys::fuzz_target;
use nonunital::assoc_schemes::{parse_matrix_text, verify_drt, verify_srg};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_matrix_text(text) {
        if a.rows().len() <= 64 {
            let _ = verify_srg(&a);
            let _ = verify_drt(&a);
        }
    }
});
