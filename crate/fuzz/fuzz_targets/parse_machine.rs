#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::machine::{parse_machine, serialize_machine};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_machine(text) {
        assert_eq!(parse_machine(&serialize_machine(&m)).expect("serialized machine parses"), m);
    }
});
