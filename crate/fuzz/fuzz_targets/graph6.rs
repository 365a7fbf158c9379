#![no_main]

use libfuzzer_sys::fuzz_target;
use pconn::io::{parse_graph6, write_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        let line = write_graph6(&g);
        assert_eq!(parse_graph6(&line).expect("written graph6 parses"), g);
    }
});
