#![no_main]

use libfuzzer_sys::fuzz_target;
use selfsim::experiments::ExperimentTable;

fuzz_target!(|data: &[u8]| {
    if let Ok(table) = ExperimentTable::from_json(data) {
        let _ = table.to_csv();
        if let Ok(json) = table.to_json() {
            let _ = ExperimentTable::from_json(&json);
        }
    }
});
