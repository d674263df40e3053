//! Strict CSV ingestion for numeric columns.
//!
//! Accepts UTF-8 text with LF or CRLF line endings, comma-separated
//! decimal-point numerals (leading/trailing blanks around a field are
//! tolerated), and an optional single header row. Anything else — ragged
//! rows, empty fields, non-numeric or non-finite tokens — is rejected with
//! a 1-based row/column address.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsvError {
    #[error("input contains no data rows")]
    Empty,
    #[error("row {row}, column {column}: cannot parse {token:?} as a finite number")]
    Parse {
        row: usize,
        column: usize,
        token: String,
    },
    #[error("row {row}: expected {expected} fields, found {found}")]
    ColumnCount {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("column index {requested} out of range; input has {available} columns")]
    ColumnOutOfRange { requested: usize, available: usize },
}

/// Parse the full table: every row must have the same field count and
/// every field must be a finite number. Row numbers in errors count the
/// header when one is present.
pub fn parse_table(text: &str, has_header: bool) -> Result<Vec<Vec<f64>>, CsvError> {
    let mut rows = Vec::new();
    let mut expected: Option<usize> = None;
    let segments = text.split('\n').count();
    for (idx, raw_line) in text.split('\n').enumerate() {
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let row_no = idx + 1;
        // an empty final segment is the usual trailing newline, not a row
        if line.is_empty() && row_no == segments {
            break;
        }
        if has_header && idx == 0 {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        match expected {
            None => expected = Some(fields.len()),
            Some(e) if e != fields.len() => {
                return Err(CsvError::ColumnCount {
                    row: row_no,
                    expected: e,
                    found: fields.len(),
                });
            }
            _ => {}
        }
        let mut parsed = Vec::with_capacity(fields.len());
        for (col, field) in fields.iter().enumerate() {
            let token = field.trim();
            let value: f64 = token.parse().map_err(|_| CsvError::Parse {
                row: row_no,
                column: col + 1,
                token: token.to_string(),
            })?;
            if !value.is_finite() {
                return Err(CsvError::Parse {
                    row: row_no,
                    column: col + 1,
                    token: token.to_string(),
                });
            }
            parsed.push(value);
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(CsvError::Empty);
    }
    Ok(rows)
}

fn column(rows: &[Vec<f64>], index: usize) -> Result<Vec<f64>, CsvError> {
    let available = rows[0].len();
    if index >= available {
        return Err(CsvError::ColumnOutOfRange {
            requested: index,
            available,
        });
    }
    Ok(rows.iter().map(|r| r[index]).collect())
}

/// One numeric column (0-based index).
pub fn parse_univariate(text: &str, has_header: bool, col: usize) -> Result<Vec<f64>, CsvError> {
    let rows = parse_table(text, has_header)?;
    column(&rows, col)
}

/// Two numeric columns, paired row-wise.
pub fn parse_bivariate(
    text: &str,
    has_header: bool,
    cols: (usize, usize),
) -> Result<(Vec<f64>, Vec<f64>), CsvError> {
    let rows = parse_table(text, has_header)?;
    Ok((column(&rows, cols.0)?, column(&rows, cols.1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lf_and_crlf() {
        assert_eq!(
            parse_univariate("1\n2\n3\n", false, 0).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        assert_eq!(
            parse_univariate("1\r\n2\r\n3", false, 0).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn header_row_is_flag_controlled() {
        assert_eq!(
            parse_univariate("value\n1\n2\n", true, 0).unwrap(),
            vec![1.0, 2.0]
        );
        let err = parse_univariate("value\n1\n2\n", false, 0).unwrap_err();
        assert_eq!(
            err,
            CsvError::Parse {
                row: 1,
                column: 1,
                token: "value".into()
            }
        );
    }

    #[test]
    fn addresses_the_offending_cell() {
        let err = parse_table("1,2\n3,x\n", false).unwrap_err();
        assert_eq!(
            err,
            CsvError::Parse {
                row: 2,
                column: 2,
                token: "x".into()
            }
        );
        let err = parse_table("1,2\n3\n", false).unwrap_err();
        assert_eq!(
            err,
            CsvError::ColumnCount {
                row: 2,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn rejects_empty_and_non_finite_input() {
        assert_eq!(parse_table("", false).unwrap_err(), CsvError::Empty);
        assert_eq!(parse_table("x\n", true).unwrap_err(), CsvError::Empty);
        assert!(matches!(
            parse_table("inf\n", false).unwrap_err(),
            CsvError::Parse { row: 1, column: 1, .. }
        ));
        assert!(matches!(
            parse_table("NaN\n", false).unwrap_err(),
            CsvError::Parse { .. }
        ));
    }

    #[test]
    fn bivariate_extraction_and_column_range() {
        let (x, y) = parse_bivariate("1,10\n2,20\n", false, (0, 1)).unwrap();
        assert_eq!(x, vec![1.0, 2.0]);
        assert_eq!(y, vec![10.0, 20.0]);
        assert_eq!(
            parse_bivariate("1,10\n", false, (0, 2)).unwrap_err(),
            CsvError::ColumnOutOfRange {
                requested: 2,
                available: 2
            }
        );
    }

    #[test]
    fn blank_interior_lines_are_errors() {
        assert!(matches!(
            parse_table("1\n\n2\n", false).unwrap_err(),
            CsvError::Parse { row: 2, column: 1, .. }
        ));
    }
}
