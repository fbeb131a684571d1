#![no_main]

use libfuzzer_sys::fuzz_target;
use qspeckle::EnsembleSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = serde_json::from_slice::<EnsembleSpec>(data) {
        let _ = spec.validate();
    }
});
