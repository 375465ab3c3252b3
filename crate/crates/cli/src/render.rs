//! Plain-text rendering of JSON reports for people.

use serde_json::Value;

pub fn table(report: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, report, 0);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Object(_) => None,
        Value::Array(items) if items.iter().any(|i| i.is_object()) => None,
        Value::Array(items) if items.len() > 8 && items.iter().any(|i| i.is_array()) => None,
        other => Some(other.to_string()),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (key, value) in map {
                match inline(value) {
                    Some(text) => out.push_str(&format!("{pad}{key:<width$}  {text}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}\n"));
                        write_value(out, value, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(text) => out.push_str(&format!("{pad}[{i}] {text}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write_value(out, item, depth + 1);
                    }
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{scalar}\n")),
    }
}
