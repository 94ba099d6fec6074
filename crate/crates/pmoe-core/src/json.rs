//! JSON target ingestion.
//!
//! Mapping: number → Int (error unless integral), string → Str, true/false →
//! Bool, array → finite collection, `{"ctor": name, "args": [...]}` → term,
//! `{"tuple": [...]}` → tuple. Any other JSON shape is a parse error.

use crate::error::{Error, Result};
use crate::value::Value;

pub fn value_from_json(src: &str) -> Result<Value> {
    let json: serde_json::Value =
        serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
    convert(&json)
}

fn convert(j: &serde_json::Value) -> Result<Value> {
    match j {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Value::Int)
            .ok_or_else(|| Error::Json(format!("non-integer number {n}"))),
        serde_json::Value::String(s) => Ok(Value::str(s)),
        serde_json::Value::Bool(b) => Ok(Value::Bool(*b)),
        serde_json::Value::Array(items) => Ok(Value::coll(
            items.iter().map(convert).collect::<Result<Vec<_>>>()?,
        )),
        serde_json::Value::Object(map) => {
            if let (Some(serde_json::Value::String(name)), Some(serde_json::Value::Array(args))) =
                (map.get("ctor"), map.get("args"))
            {
                if map.len() == 2 {
                    return Ok(Value::term(
                        name,
                        args.iter().map(convert).collect::<Result<Vec<_>>>()?,
                    ));
                }
            }
            if let Some(serde_json::Value::Array(items)) = map.get("tuple") {
                if map.len() == 1 {
                    return Ok(Value::tuple(
                        items.iter().map(convert).collect::<Result<Vec<_>>>()?,
                    ));
                }
            }
            Err(Error::Json(
                "object must be {\"ctor\": name, \"args\": [...]} or {\"tuple\": [...]}".into(),
            ))
        }
        serde_json::Value::Null => Err(Error::Json("null is not a value".into())),
    }
}
