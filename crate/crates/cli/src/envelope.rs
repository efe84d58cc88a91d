use std::collections::BTreeMap;

use num_bigint::BigUint;
use perfect_sums::{DivisorSubset, PerfectNumber};
use serde_json::{json, Map, Value};

/// Exit status for a domain or range failure.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandError {
    pub code: String,
    pub message: String,
    pub exit_code: i32,
    /// Partial payload to report alongside the error, if any.
    pub result: Option<Value>,
}

impl CommandError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: "usage".into(),
            message: message.into(),
            exit_code: EXIT_USAGE,
            result: None,
        }
    }
}

impl From<perfect_sums::Error> for CommandError {
    fn from(e: perfect_sums::Error) -> Self {
        Self {
            code: e.code().into(),
            message: e.to_string(),
            exit_code: EXIT_FAILURE,
            result: None,
        }
    }
}

/// One structured response per invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outcome: Result<Value, CommandError>,
}

impl Envelope {
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            Ok(_) => 0,
            Err(e) => e.exit_code,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("inputs".into(), json!(self.inputs));
        match &self.outcome {
            Ok(result) => {
                obj.insert("status".into(), json!("ok"));
                obj.insert("result".into(), result.clone());
            }
            Err(e) => {
                obj.insert("status".into(), json!("error"));
                if let Some(result) = &e.result {
                    obj.insert("result".into(), result.clone());
                }
                obj.insert("error".into(), json!({ "code": e.code, "message": e.message }));
            }
        }
        Value::Object(obj)
    }
}

pub fn decimal(v: &BigUint) -> Value {
    Value::String(v.to_str_radix(10))
}

pub fn decimals<'a>(values: impl IntoIterator<Item = &'a BigUint>) -> Value {
    Value::Array(values.into_iter().map(decimal).collect())
}

pub fn subset_json(subset: &DivisorSubset, pn: &PerfectNumber) -> Value {
    json!({
        "divisors": decimals(&subset.divisors(pn)),
        "mask": subset.to_hex(),
    })
}
