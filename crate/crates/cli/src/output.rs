//! Deterministic text, JSON, CSV and OBJ rendering.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use helicoid::numeric::Mesh;
use serde_json::Value;

use crate::CliError;

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn num(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        "0".into()
    } else {
        r.to_string()
    }
}

pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(round12(x) + 0.0).map_or(Value::Null, Value::Number)
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            })
        }
        Some(p) => {
            let io_err = |source| CliError::Io { path: p.display().to_string(), source };
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(io_err)
        }
    }
}

pub fn obj(mesh: &Mesh, comment: &str) -> String {
    let mut s = format!("# {comment}\n");
    for v in &mesh.vertices {
        s.push_str(&format!("v {} {} {}\n", num(v.x), num(v.y), num(v.z)));
    }
    for [a, b, c] in &mesh.triangles {
        s.push_str(&format!("f {} {} {}\n", a + 1, b + 1, c + 1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(-1e-17 * 0.0), "0");
        assert_eq!(num(123456.78901234567), "123456.789012");
        assert_eq!(json_num(2.0 / 3.0).to_string(), "0.666666666667");
    }
}
