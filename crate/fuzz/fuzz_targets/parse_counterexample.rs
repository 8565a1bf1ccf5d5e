#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::verify::Counterexample;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Counterexample::parse(text) {
        let _ = c.serialize();
    }
});
