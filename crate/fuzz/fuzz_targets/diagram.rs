#![no_main]

use std::sync::Arc;

use cubical_core::builders;
use cubical_core::diagrams::validate_diagram;
use cubical_core::io::parse_diagram;
use cubical_core::presentation::CubicalPresentation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(raw) = parse_diagram(text) else { return };
    // check the diagram over the torus and over the commutator rose
    let torus = CubicalPresentation::new(Arc::new(builders::torus()), vec![]).unwrap();
    let rose = CubicalPresentation::over_rose(&["a", "b"], &["abAB"]).unwrap();
    for p in [&torus, &rose] {
        if let Ok(d) = validate_diagram(&raw, p) {
            let back = validate_diagram(&d.to_raw(p), p).expect("round trip");
            assert_eq!(back.complexity(), d.complexity());
        }
    }
});
