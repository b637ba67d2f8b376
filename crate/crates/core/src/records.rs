//! Line-delimited JSON output. The first line is a header naming the schema
//! version and the record kind; every following line is one record.

use serde::Serialize;

use crate::error::{Error, Result};

pub const SCHEMA_NAME: &str = "singleblock-records";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Header<'a> {
    schema: &'a str,
    version: u32,
    kind: &'a str,
}

fn line<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

/// Header line followed by one line per item, newline-terminated.
pub fn to_records<T: Serialize>(kind: &str, items: &[T]) -> Result<String> {
    let mut out = line(&Header {
        schema: SCHEMA_NAME,
        version: SCHEMA_VERSION,
        kind,
    })?;
    out.push('\n');
    for item in items {
        out.push_str(&line(item)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_then_records() {
        let text = to_records("pair", &[(1, "a"), (2, "b")]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], r#"{"schema":"singleblock-records","version":1,"kind":"pair"}"#);
        assert_eq!(lines[1], r#"[1,"a"]"#);
        assert_eq!(lines.len(), 3);
    }
}
