#![no_main]

use libfuzzer_sys::fuzz_target;
use yamabe_flag_cli::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("yamabe-flag").chain(s.split_whitespace());
    if let Ok(cfg) = RunConfig::from_args(args) {
        cfg.validate().unwrap();
    }
});
