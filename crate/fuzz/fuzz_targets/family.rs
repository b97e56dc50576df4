#![no_main]

use libfuzzer_sys::fuzz_target;
use yamabe_flag::parse::parse_family_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_family_spec(s) {
        let _ = f.tag();
    }
});
