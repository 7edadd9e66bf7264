#![no_main]

use emtower::intlin::parse_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix(text) {
        // the display grammar is the parse grammar
        let again = parse_matrix(&m.to_string()).expect("rendered matrix reparses");
        assert_eq!(again, m);
    }
});
