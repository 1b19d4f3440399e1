#![no_main]

use libfuzzer_sys::fuzz_target;
use nonunital::assoc_schemes::{encode_graph6, parse_graph6, parse_graph6_file};

fuzz_target!(|data: &[u8]| {
    let _ = parse_graph6_file(data);
    if let Ok(a) = parse_graph6(data) {
        // whatever parses must survive a round trip
        let again = encode_graph6(&a).expect("parsed graphs re-encode");
        assert_eq!(parse_graph6(&again).expect("re-encoded graph6 parses"), a);
    }
});
