#![no_main]

use libfuzzer_sys::fuzz_target;
use nonunital::request::ConstructRequest;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(req) = ConstructRequest::parse(text) {
            // parse validates, so validation must not fail afterwards
            req.validate().expect("parsed requests validate");
        }
    }
});
