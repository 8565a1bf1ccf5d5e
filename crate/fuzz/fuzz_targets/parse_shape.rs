#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::{parse_shape, serialize_shape};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_shape(text) {
        assert_eq!(parse_shape(&serialize_shape(&t)).expect("serialized shape parses"), t);
    }
});
