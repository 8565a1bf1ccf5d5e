#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::LiftMap;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = LiftMap::parse(text) {
        assert_eq!(LiftMap::parse(&m.serialize()).expect("serialized lift map parses"), m);
    }
});
