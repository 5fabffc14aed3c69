#![no_main]

use clifford_hp::PauliOperator;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<PauliOperator>() {
        let again: PauliOperator = p.to_string().parse().expect("display output parses");
        assert_eq!(again, p);
    }
    if let Ok(p) = PauliOperator::parse_compact(text) {
        assert_eq!(PauliOperator::parse_compact(&p.to_compact()).unwrap(), p);
    }
});
