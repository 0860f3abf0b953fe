#![no_main]

use cubical_core::io::parse_map_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_map_file(text);
    }
});
