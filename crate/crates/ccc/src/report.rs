//! The JSON envelope every command prints.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `{version, command, config, seed}` merged with the fields of `result`.
/// Keys are sorted, so equal inputs give equal bytes.
pub fn envelope<C: Serialize, R: Serialize>(
    command: &str,
    config: &C,
    seed: Option<u64>,
    result: &R,
) -> Result<String, serde_json::Error> {
    let mut out = Map::new();
    match serde_json::to_value(result)? {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    out.insert("version".into(), Value::from(VERSION));
    out.insert("command".into(), Value::from(command));
    out.insert("config".into(), serde_json::to_value(config)?);
    out.insert("seed".into(), seed.map_or(Value::Null, Value::from));
    let mut text = serde_json::to_string_pretty(&Value::Object(out))?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        b: f64,
        a: u32,
    }

    #[test]
    fn fields_are_flattened_and_sorted() {
        let text = envelope("demo", &serde_json::json!({"x": 1}), Some(7), &R { b: 0.5, a: 2 }).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["seed"], 7);
        assert_eq!(v["a"], 2);
        assert_eq!(v["command"], "demo");
        assert_eq!(v["config"]["x"], 1);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
    }

    #[test]
    fn non_objects_go_under_result() {
        let text = envelope("demo", &(), None, &vec![1, 2]).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["result"][1], 2);
        assert!(v["seed"].is_null());
    }
}
