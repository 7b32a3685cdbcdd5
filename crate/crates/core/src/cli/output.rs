//! JSON, CSV and text renderings of a result record.

use super::{Format, ResultRecord};
use serde_json::Value;

/// Leaves of a JSON value as (dotted path, scalar text), in key order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{}.{}", prefix, k)
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| go(&join(k), x, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| go(&join(&i.to_string()), x, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Null => out.push((prefix.to_string(), String::new())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(record: &ResultRecord, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(record).expect("records serialize"),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            let v = serde_json::to_value(record).expect("records serialize");
            for (k, x) in flatten(&v) {
                s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&x)));
            }
            s.pop();
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} (version {}, {} us{})\n",
                record.command,
                record.version,
                record.wall_time_us,
                if record.cache_hit { ", cached" } else { "" }
            );
            for (k, x) in flatten(&record.payload) {
                s.push_str(&format!("  {} = {}\n", k, x));
            }
            s.pop();
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_paths() {
        let v = json!({"a": {"b": [1, "x"]}, "c": null});
        let f = flatten(&v);
        assert_eq!(
            f,
            vec![
                ("a.b.0".to_string(), "1".to_string()),
                ("a.b.1".to_string(), "x".to_string()),
                ("c".to_string(), String::new())
            ]
        );
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
