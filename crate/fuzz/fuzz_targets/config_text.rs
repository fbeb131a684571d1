#![no_main]

use libfuzzer_sys::fuzz_target;
use qspeckle_cli::config::{parse_config_text, RunConfig};

// TOML configs and the echo headers of previous CSV and JSON outputs.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = parse_config_text(text) {
        if config.validate().is_ok() {
            let again = RunConfig::from_toml(&config.to_toml()).expect("echo parses back");
            assert_eq!(again, config);
        }
    }
});
