#![no_main]

use cubical_core::builders;
use cubical_core::complex::replay_certificate;
use cubical_core::io::parse_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cert) = parse_certificate(text) {
        // replay must reject or accept, never panic
        let _ = replay_certificate(&builders::cube3(), &cert);
        let _ = replay_certificate(&builders::torus(), &cert);
    }
});
