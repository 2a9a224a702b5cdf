use std::fs;
use std::io;
use std::path::Path;

use crate::Failure;

/// 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

pub fn csv_writer<W: io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

pub fn csv_error(e: csv::Error) -> Failure {
    Failure::Runtime(format!("csv: {e}"))
}

pub fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}
