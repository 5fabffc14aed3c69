#![no_main]

use clifford_hp::CliffordTableau;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(u) = CliffordTableau::from_json(text) {
        let back = CliffordTableau::from_json(&u.to_json()).expect("round trip");
        assert_eq!(back, u);
    }
});
