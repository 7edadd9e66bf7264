#![no_main]

use emtower::towerfile::{from_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(result) = from_json(text) {
        assert_eq!(from_json(&to_json(&result)).expect("round trip"), result);
    }
});
