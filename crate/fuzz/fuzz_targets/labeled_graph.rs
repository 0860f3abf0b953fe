#![no_main]

use cubical_core::artin::build_rose;
use cubical_core::io::parse_labeled_graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_labeled_graph(text) {
        assert_eq!(build_rose(&g).count(1), g.vertices().len());
    }
});
