//! Reading and writing dense matrices as Matrix Market array files.
//!
//! Only the dense `array real general` flavor is handled: a header line,
//! optional `%` comment lines, a `rows cols` line, then `rows * cols` values,
//! one per line, in column-major order. The sparse `coordinate` flavor is
//! rejected with a pointed message. Values are written with enough digits to
//! round-trip every finite `f64` bit-exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::matrix::DenseMatrix;

/// Failure while reading or writing a matrix file.
#[derive(Debug)]
pub enum MatrixIoError {
    Io(std::io::Error),
    /// Malformed content, with the 1-based line number.
    Parse { line: usize, reason: String },
}

impl std::fmt::Display for MatrixIoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixIoError::Io(e) => write!(f, "{e}"),
            MatrixIoError::Parse { line, reason } => write!(f, "line {line}: {reason}"),
        }
    }
}

impl std::error::Error for MatrixIoError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            MatrixIoError::Io(e) => Some(e),
            MatrixIoError::Parse { .. } => None,
        }
    }
}

impl From<std::io::Error> for MatrixIoError {
    fn from(e: std::io::Error) -> Self {
        MatrixIoError::Io(e)
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> MatrixIoError {
    MatrixIoError::Parse { line, reason: reason.into() }
}

/// Checks the banner token by token; keywords are case-insensitive.
fn check_header(line: &str) -> Result<(), String> {
    let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    let expected = ["%%matrixmarket", "matrix", "array", "real", "general"];
    if tokens.first().map(String::as_str) != Some(expected[0]) {
        return Err("expected a '%%MatrixMarket' header".into());
    }
    if tokens.get(2).map(String::as_str) == Some("coordinate") {
        return Err("coordinate (sparse) Matrix Market files are not supported; \
                    only the dense 'array' format is"
            .into());
    }
    if tokens.len() != expected.len() {
        return Err(format!(
            "expected header '%%MatrixMarket matrix array real general', found {} tokens",
            tokens.len()
        ));
    }
    for (found, want) in tokens.iter().zip(expected) {
        if found != want {
            return Err(format!("unsupported header keyword '{found}' (expected '{want}')"));
        }
    }
    Ok(())
}

/// Reads a dense `array real general` Matrix Market file.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<DenseMatrix, MatrixIoError> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected a '%%MatrixMarket' header"))?;
    check_header(&header?).map_err(|reason| parse_err(1, reason))?;

    let mut dims: Option<(usize, usize)> = None;
    let mut values: Vec<f64> = Vec::new();
    let mut last_line = 1usize;
    for (idx, line) in lines {
        let line = line?;
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        match dims {
            None => {
                let tokens: Vec<&str> = trimmed.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(parse_err(
                        line_no,
                        format!("expected 'rows cols', found {} tokens", tokens.len()),
                    ));
                }
                let rows: usize = tokens[0]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid row count '{}'", tokens[0])))?;
                let cols: usize = tokens[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid column count '{}'", tokens[1])))?;
                if rows == 0 || cols == 0 {
                    return Err(parse_err(line_no, "dimensions must be positive"));
                }
                dims = Some((rows, cols));
                values.reserve(rows * cols);
            }
            Some((rows, cols)) => {
                let tokens: Vec<&str> = trimmed.split_whitespace().collect();
                if tokens.len() != 1 {
                    return Err(parse_err(
                        line_no,
                        format!("expected one value per line, found {} tokens", tokens.len()),
                    ));
                }
                if values.len() == rows * cols {
                    return Err(parse_err(
                        line_no,
                        format!("value count mismatch: expected {} values", rows * cols),
                    ));
                }
                let v: f64 = tokens[0]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid value '{}'", tokens[0])))?;
                values.push(v);
            }
        }
    }
    let (rows, cols) = dims.ok_or_else(|| parse_err(last_line, "missing 'rows cols' line"))?;
    if values.len() != rows * cols {
        return Err(parse_err(
            last_line,
            format!("value count mismatch: expected {}, found {}", rows * cols, values.len()),
        ));
    }
    Ok(DenseMatrix::from_column_major(rows, cols, values))
}

/// Writes a matrix as a dense `array real general` Matrix Market file,
/// column by column with one value per line. Empty matrices are rejected
/// before anything is written.
pub fn write_matrix(path: impl AsRef<Path>, a: &DenseMatrix) -> Result<(), MatrixIoError> {
    if a.is_empty() {
        return Err(MatrixIoError::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "refusing to write an empty matrix",
        )));
    }
    let file = File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", a.n_rows(), a.n_cols())?;
    for v in a.data() {
        // 17 significant digits: enough for an exact f64 round trip.
        writeln!(w, "{v:.16e}")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> std::path::PathBuf {
        use std::sync::atomic::{AtomicUsize, Ordering};
        static COUNTER: AtomicUsize = AtomicUsize::new(0);
        let path = std::env::temp_dir().join(format!(
            "axb-io-test-{}-{}.mtx",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    #[test]
    fn reads_a_plain_array_file() {
        let path = write_temp(
            "%%MatrixMarket matrix array real general\n\
             % a comment line\n\
             2 2\n1.0\n2.0\n3.5\n-4.0\n",
        );
        let m = read_matrix(&path).unwrap();
        std::fs::remove_file(&path).ok();
        // Column-major order: first two values fill column 0.
        assert_eq!(m[(0, 0)], 1.0);
        assert_eq!(m[(1, 0)], 2.0);
        assert_eq!(m[(0, 1)], 3.5);
        assert_eq!(m[(1, 1)], -4.0);
    }

    #[test]
    fn accepts_integer_and_exponent_literals() {
        let path = write_temp(
            "%%MatrixMarket matrix array real general\n2 1\n1\n-2.5E-3\n",
        );
        let m = read_matrix(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(m[(0, 0)], 1.0);
        assert_eq!(m[(1, 0)], -2.5e-3);
    }

    #[test]
    fn rejects_coordinate_files_with_a_clear_message() {
        let path = write_temp(
            "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n",
        );
        let err = read_matrix(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        match err {
            MatrixIoError::Parse { line, reason } => {
                assert_eq!(line, 1);
                assert!(reason.contains("coordinate"), "unhelpful message: {reason}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_content() {
        // Value count too small.
        let path = write_temp("%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n");
        assert!(matches!(
            read_matrix(&path),
            Err(MatrixIoError::Parse { .. })
        ));
        std::fs::remove_file(&path).ok();
        // Value count too large.
        let path = write_temp("%%MatrixMarket matrix array real general\n1 1\n1.0\n2.0\n");
        assert!(matches!(read_matrix(&path), Err(MatrixIoError::Parse { line: 4, .. })));
        std::fs::remove_file(&path).ok();
        // Zero dimension.
        let path = write_temp("%%MatrixMarket matrix array real general\n0 2\n");
        assert!(matches!(read_matrix(&path), Err(MatrixIoError::Parse { line: 2, .. })));
        std::fs::remove_file(&path).ok();
        // Unparseable value.
        let path = write_temp("%%MatrixMarket matrix array real general\n1 1\nabc\n");
        assert!(matches!(read_matrix(&path), Err(MatrixIoError::Parse { line: 3, .. })));
        std::fs::remove_file(&path).ok();
        // Wrong header keyword.
        let path = write_temp("%%MatrixMarket matrix array complex general\n1 1\n1.0\n");
        assert!(matches!(read_matrix(&path), Err(MatrixIoError::Parse { line: 1, .. })));
        std::fs::remove_file(&path).ok();
        // Missing file surfaces as Io.
        assert!(matches!(
            read_matrix("/nonexistent/axb-io-test.mtx"),
            Err(MatrixIoError::Io(_))
        ));
    }

    #[test]
    fn header_keywords_are_case_insensitive() {
        let path = write_temp("%%matrixmarket MATRIX Array Real GENERAL\n1 1\n7.0\n");
        let m = read_matrix(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(m[(0, 0)], 7.0);
    }

    #[test]
    fn write_then_read_is_bit_exact() {
        let values = vec![
            1.0,
            -2.0 / 3.0,
            f64::MIN_POSITIVE,
            1.0 + f64::EPSILON,
            -1.2345678912345678e300,
            3.5e-200,
            0.1,
            -0.0,
        ];
        let m = DenseMatrix::from_column_major(4, 2, values);
        let path = std::env::temp_dir().join(format!("axb-io-roundtrip-{}.mtx", std::process::id()));
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(back.n_rows(), 4);
        assert_eq!(back.n_cols(), 2);
        for (a, b) in m.data().iter().zip(back.data()) {
            assert_eq!(a.to_bits(), b.to_bits(), "{a} did not round trip");
        }
    }

    #[test]
    fn refuses_to_write_empty_matrices() {
        let m = DenseMatrix::zeros(0, 3);
        let path = std::env::temp_dir().join("axb-io-empty.mtx");
        assert!(matches!(write_matrix(&path, &m), Err(MatrixIoError::Io(_))));
        assert!(!path.exists());
    }
}
