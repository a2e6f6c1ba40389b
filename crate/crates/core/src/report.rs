//! Shared serialization helpers: every float in a report is written with 17
//! significant digits so that reports are bit-reproducible.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

/// `x` with 17 significant digits; non-finite values become `null`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// An `f64` that serializes with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(F17(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

impl From<f64> for F17 {
    fn from(x: f64) -> Self {
        F17(x)
    }
}

pub fn f17s(xs: &[f64]) -> Vec<F17> {
    xs.iter().copied().map(F17).collect()
}

/// Writes `contents` to `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &std::path::Path, contents: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}
