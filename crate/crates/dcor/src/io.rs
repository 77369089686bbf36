//! CSV ingestion and JSON covariance-specification files.
//!
//! The CSV dialect is plain: comma separated, one header row with unique
//! names, `.` decimal points, UTF-8. Specification files are JSON documents
//! with keys `p`, `q`, `sigma_x`, `sigma_y`, `sigma_xy`, an optional `mean`,
//! and a `version` field (currently 1).

use crate::error::{Error, Result};
use crate::gaussian::GaussianSpec;
use crate::linalg::{Matrix, SymMatrix};
use crate::stats::DataMatrix;
use serde::Deserialize;
use std::path::Path;

/// A fully numeric CSV table.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.headers.len()
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                name: name.to_string(),
            })
    }
}

fn open_error(path: &Path, err: csv::Error) -> Error {
    if let csv::ErrorKind::Io(io) = err.kind() {
        if io.kind() == std::io::ErrorKind::NotFound {
            return Error::FileNotFound {
                path: path.display().to_string(),
            };
        }
    }
    Error::Io(std::io::Error::other(err))
}

/// Reads and fully parses a numeric CSV file.
pub fn read_csv_table(path: impl AsRef<Path>) -> Result<CsvTable> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| open_error(path, e))?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| open_error(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    for (i, h) in headers.iter().enumerate() {
        if headers[..i].contains(h) {
            return Err(Error::DuplicateColumn { name: h.clone() });
        }
    }
    let n_cols = headers.len();
    let mut rows = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| open_error(path, e))?;
        if record.len() != n_cols {
            return Err(Error::RaggedRow {
                row: row_idx,
                expected: n_cols,
                found: record.len(),
            });
        }
        let mut row = Vec::with_capacity(n_cols);
        for (col_idx, cell) in record.iter().enumerate() {
            let parsed = cell.parse::<f64>().ok().filter(|v| v.is_finite());
            match parsed {
                Some(v) => row.push(v),
                None => {
                    return Err(Error::NonNumericCell {
                        row: row_idx,
                        column: headers[col_idx].clone(),
                        value: cell.to_string(),
                    })
                }
            }
        }
        rows.push(row);
    }
    Ok(CsvTable { headers, rows })
}

/// Reads the named columns of a CSV file into a [`DataMatrix`], one sample
/// per row in file order. A header-only file yields an empty matrix that
/// downstream statistics reject.
pub fn read_csv(path: impl AsRef<Path>, columns: &[&str]) -> Result<DataMatrix> {
    let table = read_csv_table(path)?;
    table.select(columns)
}

impl CsvTable {
    /// Extracts the named columns as a [`DataMatrix`].
    pub fn select(&self, columns: &[&str]) -> Result<DataMatrix> {
        assert!(!columns.is_empty(), "at least one column must be selected");
        let indices: Vec<usize> = columns
            .iter()
            .map(|c| self.column_index(c))
            .collect::<Result<_>>()?;
        let dim = indices.len();
        let mut values = Vec::with_capacity(self.rows.len() * dim);
        for row in &self.rows {
            for &idx in &indices {
                values.push(row[idx]);
            }
        }
        DataMatrix::from_samples(dim, values)
    }
}

#[derive(Debug, Deserialize)]
struct SpecFile {
    #[serde(default = "default_version")]
    version: u32,
    p: usize,
    q: usize,
    sigma_x: Vec<Vec<f64>>,
    sigma_y: Vec<Vec<f64>>,
    sigma_xy: Vec<Vec<f64>>,
    #[serde(default)]
    mean: Option<Vec<f64>>,
}

fn default_version() -> u32 {
    1
}

/// Loads a Gaussian block-covariance specification from a JSON file.
pub fn load_gaussian_spec(path: impl AsRef<Path>) -> Result<GaussianSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::FileNotFound {
                path: path.display().to_string(),
            }
        } else {
            Error::Io(e)
        }
    })?;
    let parse_err = |message: String| Error::SpecParse {
        path: path.display().to_string(),
        message,
    };
    let file: SpecFile =
        serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
    if file.version != 1 {
        return Err(parse_err(format!(
            "unsupported version {}, expected 1",
            file.version
        )));
    }
    if file.sigma_x.len() != file.p {
        return Err(parse_err(format!(
            "sigma_x has {} rows, expected p = {}",
            file.sigma_x.len(),
            file.p
        )));
    }
    if file.sigma_y.len() != file.q {
        return Err(parse_err(format!(
            "sigma_y has {} rows, expected q = {}",
            file.sigma_y.len(),
            file.q
        )));
    }
    let sigma_x = SymMatrix::from_rows(&file.sigma_x)
        .map_err(|e| parse_err(format!("sigma_x: {e}")))?;
    let sigma_y = SymMatrix::from_rows(&file.sigma_y)
        .map_err(|e| parse_err(format!("sigma_y: {e}")))?;
    let sigma_xy = Matrix::from_rows(&file.sigma_xy)
        .map_err(|e| parse_err(format!("sigma_xy: {e}")))?;
    GaussianSpec::new(sigma_x, sigma_y, sigma_xy, file.mean)
        .map_err(|e| parse_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str, suffix: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn reads_simple_table() {
        let f = write_temp("a,b\n1.0,2.0\n3.5,-4.0\n0,9e2\n", ".csv");
        let data = read_csv(f.path(), &["a", "b"]).unwrap();
        assert_eq!(data.dim(), 2);
        assert_eq!(data.n(), 3);
        assert_eq!(data.sample(1), &[3.5, -4.0]);
        // column order follows the selection, not the file
        let swapped = read_csv(f.path(), &["b", "a"]).unwrap();
        assert_eq!(swapped.sample(0), &[2.0, 1.0]);
    }

    #[test]
    fn missing_file_and_column() {
        assert!(matches!(
            read_csv("/nonexistent/file.csv", &["a"]),
            Err(Error::FileNotFound { .. })
        ));
        let f = write_temp("a,b\n1,2\n", ".csv");
        assert!(matches!(
            read_csv(f.path(), &["c"]),
            Err(Error::MissingColumn { name }) if name == "c"
        ));
    }

    #[test]
    fn non_numeric_cell_is_located() {
        let f = write_temp("a,b\n1,2\n3,NA\n", ".csv");
        match read_csv(f.path(), &["a", "b"]) {
            Err(Error::NonNumericCell { row, column, value }) => {
                assert_eq!(row, 1);
                assert_eq!(column, "b");
                assert_eq!(value, "NA");
            }
            other => panic!("expected NonNumericCell, got {other:?}"),
        }
    }

    #[test]
    fn infinities_are_rejected() {
        let f = write_temp("a\ninf\n", ".csv");
        assert!(matches!(
            read_csv(f.path(), &["a"]),
            Err(Error::NonNumericCell { .. })
        ));
    }

    #[test]
    fn ragged_row_is_located() {
        let f = write_temp("a,b\n1,2\n3\n", ".csv");
        assert!(matches!(
            read_csv(f.path(), &["a"]),
            Err(Error::RaggedRow {
                row: 1,
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn duplicate_header_rejected() {
        let f = write_temp("a,a\n1,2\n", ".csv");
        assert!(matches!(
            read_csv_table(f.path()),
            Err(Error::DuplicateColumn { .. })
        ));
    }

    #[test]
    fn header_only_file_gives_empty_matrix() {
        let f = write_temp("a,b\n", ".csv");
        let data = read_csv(f.path(), &["a"]).unwrap();
        assert_eq!(data.n(), 0);
    }

    #[test]
    fn loads_spec_file() {
        let f = write_temp(
            r#"{
                "version": 1,
                "p": 2, "q": 1,
                "sigma_x": [[1.0, 0.1], [0.1, 1.0]],
                "sigma_y": [[1.0]],
                "sigma_xy": [[0.3], [0.2]],
                "mean": [0.0, 0.0, 1.0]
            }"#,
            ".json",
        );
        let spec = load_gaussian_spec(f.path()).unwrap();
        assert_eq!(spec.p(), 2);
        assert_eq!(spec.q(), 1);
        assert_eq!(spec.mean(), &[0.0, 0.0, 1.0]);
        assert_eq!(spec.sigma_xy().get(0, 0), 0.3);
    }

    #[test]
    fn spec_file_errors_are_addressed() {
        let f = write_temp(r#"{"p": 1"#, ".json");
        match load_gaussian_spec(f.path()) {
            Err(Error::SpecParse { message, .. }) => {
                assert!(message.contains("line"), "message: {message}");
            }
            other => panic!("expected SpecParse, got {other:?}"),
        }

        let f = write_temp(
            r#"{"version": 2, "p": 1, "q": 1, "sigma_x": [[1]], "sigma_y": [[1]], "sigma_xy": [[0]]}"#,
            ".json",
        );
        assert!(matches!(
            load_gaussian_spec(f.path()),
            Err(Error::SpecParse { .. })
        ));

        let f = write_temp(
            r#"{"p": 2, "q": 1, "sigma_x": [[1, 0.5], [0.4, 1]], "sigma_y": [[1]], "sigma_xy": [[0], [0]]}"#,
            ".json",
        );
        match load_gaussian_spec(f.path()) {
            Err(Error::SpecParse { message, .. }) => {
                assert!(message.contains("symmetry"), "message: {message}");
            }
            other => panic!("expected SpecParse, got {other:?}"),
        }
    }
}
