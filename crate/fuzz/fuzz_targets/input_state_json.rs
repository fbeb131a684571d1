#![no_main]

use libfuzzer_sys::fuzz_target;
use qspeckle::InputState;

fuzz_target!(|data: &[u8]| {
    if let Ok(state) = serde_json::from_slice::<InputState>(data) {
        assert!(state.mean_photons() >= 0.0 && state.mean_photons().is_finite());
        let text = serde_json::to_string(&state).unwrap();
        assert_eq!(serde_json::from_str::<InputState>(&text).unwrap(), state);
    }
});
