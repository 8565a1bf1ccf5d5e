#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::{parse_any, serialize_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = parse_any(text) {
        // whatever parses must survive a round trip
        let again = parse_any(&serialize_instance(&inst)).expect("serialized instance parses");
        assert_eq!(again, inst);
    }
});
