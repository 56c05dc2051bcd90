#![no_main]

use libfuzzer_sys::fuzz_target;
use selfsim::experiments::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(config) = ExperimentConfig::from_json(data) {
        if config.validate().is_ok() {
            let kinds = config.forming_kinds();
            assert_eq!(kinds.len(), config.h_values.len());
            assert!(config.max_hurst_index() < kinds.len());
        }
    }
});
