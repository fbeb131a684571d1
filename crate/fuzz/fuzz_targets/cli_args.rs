#![no_main]

use libfuzzer_sys::fuzz_target;
use qspeckle_cli::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split('\n').collect();
    // Keep the parser away from the filesystem.
    if args.iter().any(|a| a.starts_with("--config")) {
        return;
    }
    let _ = parse_config(std::iter::once("qspeckle").chain(args));
});
