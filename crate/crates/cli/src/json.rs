use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::CliError;

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64 number"));
            *n = Number::from_f64(x).expect("finite");
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(data: &T) -> Result<Value, CliError> {
    serde_json::to_value(data).map_err(|e| CliError::Invalid(format!("cannot serialize output: {e}")))
}

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn render(mut value: Value) -> String {
    round_value(&mut value);
    let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
    out.push('\n');
    out
}

/// A single value for one rank, an array for several.
pub fn one_or_many(mut items: Vec<Value>) -> Value {
    if items.len() == 1 {
        items.pop().expect("one item")
    } else {
        Value::Array(items)
    }
}
