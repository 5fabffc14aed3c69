#![no_main]

use clifford_hp::{Circuit, CliffordTableau};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Circuit::parse(text, None) {
        if c.num_qubits() <= 64 {
            let u = CliffordTableau::from_circuit(&c);
            assert_eq!(u.n(), c.num_qubits());
        }
    }
});
