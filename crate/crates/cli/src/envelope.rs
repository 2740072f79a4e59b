use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Result of one command: the JSON payload, plus a raw text body for
/// commands whose human-readable form is CSV or Markdown.
pub struct Output {
    pub result: Value,
    pub body: Option<String>,
    pub warnings: Vec<String>,
}

impl Output {
    pub fn json(result: Value) -> Self {
        Output {
            result,
            body: None,
            warnings: Vec::new(),
        }
    }

    pub fn with_body(result: Value, body: String) -> Self {
        Output {
            result,
            body: Some(body),
            warnings: Vec::new(),
        }
    }
}

pub fn envelope(command: &str, input_echo: &str, result: Value, warnings: &[String]) -> Value {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    m.insert("command".into(), command.into());
    m.insert("inputEcho".into(), input_echo.into());
    m.insert("result".into(), result);
    m.insert(
        "warnings".into(),
        warnings.iter().map(|w| Value::from(w.as_str())).collect(),
    );
    Value::Object(m)
}

/// Floats as 17 significant digits, so output is byte-stable.
fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN))
    } else {
        n.to_string()
    }
}

/// Deterministic pretty JSON: keys sorted (the map type is ordered), two
/// spaces of indent.
pub fn to_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Number(n) => out.push_str(&number(n)),
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::from(k.as_str()).to_string());
                out.push_str(": ");
                write_json(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) if n.is_f64() => Some(format!("{:.6e}", n.as_f64().unwrap_or(f64::NAN))),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => Some(
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

/// The same content as aligned `key  value` text.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_have_seventeen_digits_and_keys_sort() {
        let v = json!({"b": 0.1, "a": [1, 2.5], "c": {}});
        assert_eq!(to_json(&v), "{\n  \"a\": [\n    1,\n    2.5000000000000000e0\n  ],\n  \"b\": 1.0000000000000001e-1,\n  \"c\": {}\n}\n");
    }

    #[test]
    fn text_aligns_keys() {
        let v = json!({"id": "kdv", "residual": 1e-9, "notes": ["x"]});
        assert_eq!(
            to_text(&v),
            "id        kdv\nnotes\n  - x\nresidual  1.000000e-9\n"
        );
    }
}
