#![no_main]

use emtower::FgAbGroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = text.parse::<FgAbGroup>() {
        let again: FgAbGroup = g.to_string().parse().expect("rendered group reparses");
        assert_eq!(again, g);
    }
});
