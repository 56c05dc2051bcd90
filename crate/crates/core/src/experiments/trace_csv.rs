//! Single-column CSV traces: a `value` header followed by one intensity per line.

use crate::error::{Error, Result};
use crate::experiments::format::format_significant;
use crate::traffic::TrafficTrace;

pub const TRACE_HEADER: &str = "value";
pub const TRACE_DIGITS: usize = 12;

pub fn export_trace(trace: &TrafficTrace) -> Vec<u8> {
    let mut out = String::with_capacity(16 * (trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for &v in trace.values() {
        out.push_str(&format_significant(v, TRACE_DIGITS));
        out.push('\n');
    }
    out.into_bytes()
}

/// Parse a trace. Line numbers in errors are 1-based.
pub fn import_trace(bytes: &[u8]) -> Result<TrafficTrace> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1,
        message: "invalid UTF-8".into(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);

    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.by_ref().find(|(_, l)| !l.is_empty()) {
        Some((_, TRACE_HEADER)) => {}
        Some((line, other)) => {
            return Err(Error::Parse { line, message: format!("expected header '{TRACE_HEADER}', found '{other}'") })
        }
        None => return Err(Error::Parse { line: 1, message: "missing header".into() }),
    }

    let mut values = Vec::new();
    for (line, field) in lines.filter(|(_, l)| !l.is_empty()) {
        let value: f64 =
            field.parse().map_err(|_| Error::Parse { line, message: format!("'{field}' is not a number") })?;
        if !value.is_finite() {
            return Err(Error::Parse { line, message: format!("non-finite value '{field}'") });
        }
        if value < 0.0 {
            return Err(Error::Negative { line, value });
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::Parse { line: text.lines().count().max(1), message: "trace has no values".into() });
    }
    TrafficTrace::external(values)
}
