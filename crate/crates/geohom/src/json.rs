//! JSON helpers: big integers are emitted as JSON numbers of any length.

use std::str::FromStr;

use serde_json::{json, Number, Value};

use crate::exactmath::{rat_string, Int, Mat, Rat};

pub fn number(x: &Int) -> Number {
    Number::from_str(&x.to_string()).expect("integer literal")
}

pub fn int_value(x: &Int) -> Value {
    Value::Number(number(x))
}

pub fn mat_value(m: &Mat) -> Value {
    Value::Array(m.entries().iter().map(int_value).collect())
}

pub fn rat_value(x: &Rat) -> Value {
    json!(rat_string(x))
}

pub fn ints_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}
