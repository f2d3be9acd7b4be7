//! JSON and text rendering of command results.

use std::fmt::Write as _;
use std::str::FromStr;

use qschubert_core::Rational;
use serde_json::{Number, Value};

/// A command result: the JSON payload and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub ok: bool,
}

impl Report {
    pub fn ok(value: Value) -> Self {
        Report { value, ok: true }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.value).expect("json values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => render_text(&self.value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    #[default]
    Text,
}

/// Integers become JSON integers of any size; other rationals become
/// strings `"p/q"`.
pub fn rational_json(q: &Rational) -> Value {
    if q.is_integer() {
        Value::Number(Number::from_str(&q.numer().to_string()).expect("integer literal"))
    } else {
        Value::String(q.to_string())
    }
}

pub fn elapsed_ms(d: std::time::Duration) -> Value {
    let ms = (d.as_secs_f64() * 1e6).round() / 1e3;
    Number::from_f64(ms).map_or(Value::Null, Value::Number)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `key: value` lines, nested blocks indented by two spaces.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
                        let joined: Vec<String> = items.iter().filter_map(scalar).collect();
                        let _ = writeln!(out, "{pad}{key}: {}", joined.join(", "));
                    }
                    v if scalar(v).is_some() => {
                        let _ = writeln!(out, "{pad}{key}: {}", scalar(v).unwrap());
                    }
                    nested => {
                        let _ = writeln!(out, "{pad}{key}:");
                        write_value(out, nested, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 && indent == 0 {
                    out.push('\n');
                }
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let mut block = String::new();
                        write_value(&mut block, item, indent + 2);
                        // mark the first line of each element
                        let mut lines = block.lines();
                        if let Some(first) = lines.next() {
                            let _ = writeln!(out, "{pad}- {}", first.trim_start());
                        }
                        for line in lines {
                            let _ = writeln!(out, "{line}");
                        }
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use serde_json::json;

    #[test]
    fn integers_stay_integers() {
        let big = Rational::from_integer(BigInt::from(10u8).pow(30));
        assert_eq!(
            serde_json::to_string(&rational_json(&big)).unwrap(),
            "1000000000000000000000000000000"
        );
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(rational_json(&third), json!("1/3"));
        assert_eq!(
            rational_json(&Rational::from_integer((-6).into())),
            json!(-6)
        );
    }

    #[test]
    fn text_layout() {
        let v = json!({
            "r": 2,
            "gradient": ["X1", "X2"],
            "checks": [{"check": "a", "pass": true}, {"check": "b", "pass": false}],
        });
        assert_eq!(
            render_text(&v),
            "r: 2\ngradient: X1, X2\nchecks:\n  - check: a\n    pass: true\n  - check: b\n    pass: false\n"
        );
    }
}
