#![no_main]

use libfuzzer_sys::fuzz_target;
use selfsim::experiments::{export_trace, import_trace};

fuzz_target!(|data: &[u8]| {
    if let Ok(trace) = import_trace(data) {
        assert!(trace.values().iter().all(|v| v.is_finite() && *v >= 0.0));
        let again = import_trace(&export_trace(&trace)).expect("exported trace re-imports");
        assert_eq!(again.len(), trace.len());
    }
});
