#![no_main]

use cubical_core::io::parse_complex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_complex(text) {
        // a validated complex survives a trip through its raw form
        let again = x.to_raw().validate().expect("round trip");
        assert_eq!(again.to_raw(), x.to_raw());
        let _ = cubical_core::complex::check_npc(&x);
    }
});
