#![no_main]

use libfuzzer_sys::fuzz_target;
use xalpwb::{check_solution, parse_any, parse_solution};

// input: an instance, a line "%%", then a solution
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((inst, sol)) = text.split_once("\n%%\n") else { return };
    let Ok(inst) = parse_any(inst) else { return };
    if let Ok(s) = parse_solution(&inst, sol) {
        let _ = check_solution(&inst, &s);
    }
});
