#![no_main]

use libfuzzer_sys::fuzz_target;
use nonunital::e_code::{EMatrix, F4Matrix};
use nonunital::ECode;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = EMatrix::parse_text(text) {
        assert_eq!(EMatrix::parse_text(&m.to_text()).expect("round trip"), m);
        if m.cols <= 32 && m.rows.len() <= 32 {
            if let Ok(code) = ECode::left_span(m.cols, &m.rows) {
                let _ = code.is_qsd();
                let _ = code.is_self_orthogonal();
            }
        }
    }
    if let Ok(f) = F4Matrix::parse_text(text) {
        assert_eq!(F4Matrix::parse_text(&f.to_text()).expect("round trip"), f);
    }
});
