#![no_main]

use libfuzzer_sys::fuzz_target;
use pconn::io::{parse_gadget_spec, spec_out_of_range, write_gadget_spec};
use pconn::lab::{build_counterexample, verify_gadget_structure, BlockKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_gadget_spec(text) else { return };
    assert_eq!(parse_gadget_spec(&write_gadget_spec(&spec)).expect("written specs parse"), spec);
    let (g, _) = build_counterexample(BlockKind::MiniPath, 1).unwrap();
    // the checker must report, never panic, on any spec whose ids fit
    if spec_out_of_range(&spec, g.n()).is_none() {
        let _ = verify_gadget_structure(&g, &spec);
    }
});
