#![no_main]

use clifford_hp::hp::InstanceJson;
use clifford_hp::HpInstance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(json) = serde_json::from_slice::<InstanceJson>(data) else {
        return;
    };
    if let Ok(inst) = HpInstance::from_json(&json) {
        assert_eq!(inst.to_json(), json);
    }
});
