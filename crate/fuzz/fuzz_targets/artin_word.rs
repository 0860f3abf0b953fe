#![no_main]

use cubical_core::artin::{parse_word, DihedralArtin};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(w) = parse_word(text) else { return };
    let Ok(g) = DihedralArtin::new(u32::from(m % 12) + 2) else { return };
    let nf = g.normal_form(&w);
    assert_eq!(g.normal_form(&g.to_word(&nf)), nf);
});
