use serde_json::Value;

use crate::Format;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Pretty => {
            let mut out = String::new();
            pretty(v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else if x.as_array().is_some_and(|a| a.is_empty()) {
                    out.push_str(&format!("{pad}{k}: (none)\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    pretty(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    pretty(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}
