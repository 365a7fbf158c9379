#![no_main]

use libfuzzer_sys::fuzz_target;
use pconn::graph::families::petersen;
use pconn::io::{parse_coloring_json, write_coloring_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let g = petersen();
    if let Ok(c) = parse_coloring_json(text, &g) {
        assert_eq!(c.len(), g.m());
        assert!(c.colors().iter().all(|&x| x >= 1 && x <= c.k()));
        assert_eq!(parse_coloring_json(&write_coloring_json(&g, &c), &g).unwrap(), c);
    }
});
