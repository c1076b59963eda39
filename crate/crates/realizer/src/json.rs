//! Trace serialization.
//!
//! The wire format is the serde encoding of [`Trace`]: an object with
//! `initial`, `steps` (an array of `{"rule", "next"}` entries, the rule one
//! of `"mu"`, `"mu-tilde"`, `"mu-cons"`, `"mu-tilde-sum"`) and `final`.
//! Configurations are `{"t": ..., "e": ...}` and every machine node is a
//! tagged object `{"k": ..., ...}`; literals carry their value as a decimal
//! string.

use crate::machine::Trace;

/// Encode a trace as pretty-printed JSON. Callers are expected to encode
/// checked traces only; see [`crate::machine::check_trace`].
pub fn encode_trace(trace: &Trace) -> String {
    serde_json::to_string_pretty(trace).expect("traces always serialize")
}

/// Decode a trace from JSON text. The result is not re-checked here.
pub fn decode_trace(text: &str) -> Result<Trace, serde_json::Error> {
    serde_json::from_str(text)
}
