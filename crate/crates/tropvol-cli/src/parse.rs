//! Text format for tropical matrices: rows separated by newlines or
//! semicolons, entries by whitespace or commas. Entries are integers,
//! fractions `p/q`, or the token `inf` (case-insensitive). Parsing is
//! locale-independent and loses no precision.

use std::fmt;

use num_bigint::BigInt;
use tropvol::{Rat, TropicalMatrix, TropicalScalar};

/// A rejected matrix text, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_entry(token: &str, line: usize, column: usize) -> Result<TropicalScalar, ParseError> {
    let err = |message: String| ParseError {
        line,
        column,
        message,
    };
    if token.eq_ignore_ascii_case("inf") {
        return Ok(TropicalScalar::Infinity);
    }
    if let Some((num, den)) = token.split_once('/') {
        let p: BigInt = num
            .parse()
            .map_err(|_| err(format!("invalid numerator in `{token}`")))?;
        let q: BigInt = den
            .parse()
            .map_err(|_| err(format!("invalid denominator in `{token}`")))?;
        if q == BigInt::from(0) {
            return Err(err(format!("zero denominator in `{token}`")));
        }
        return Ok(TropicalScalar::finite(Rat::new(p, q)));
    }
    let n: BigInt = token
        .parse()
        .map_err(|_| err(format!("invalid entry `{token}`; expected an integer, `p/q`, or `inf`")))?;
    Ok(TropicalScalar::finite(Rat::from_integer(n)))
}

/// Parse matrix text. Rejects empty input, bad tokens, and ragged rows,
/// reporting 1-based line and column positions.
pub fn parse_matrix(text: &str) -> Result<TropicalMatrix, ParseError> {
    // (entries, line, column of the row's first entry)
    let mut rows: Vec<(Vec<TropicalScalar>, usize, usize)> = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let mut row: Vec<TropicalScalar> = Vec::new();
        let mut row_start_col = 0usize;
        let mut token_start: Option<usize> = None;
        // one past the end flushes the final token / row
        let flush_row =
            |rows: &mut Vec<(Vec<TropicalScalar>, usize, usize)>, row: &mut Vec<TropicalScalar>, col: usize| {
                if !row.is_empty() {
                    rows.push((std::mem::take(row), line_no, col + 1));
                }
            };
        let chars: Vec<char> = line.chars().collect();
        for (col, &c) in chars.iter().chain(std::iter::once(&'\n')).enumerate() {
            let is_sep = c.is_whitespace() || c == ',' || c == ';' || c == '\n';
            match (token_start, is_sep) {
                (None, false) => {
                    if row.is_empty() {
                        row_start_col = col;
                    }
                    token_start = Some(col);
                }
                (Some(start), true) => {
                    let token: String = chars[start..col].iter().collect();
                    row.push(parse_entry(&token, line_no, start + 1)?);
                    token_start = None;
                }
                _ => {}
            }
            if c == ';' || c == '\n' {
                flush_row(&mut rows, &mut row, row_start_col);
            }
        }
    }
    if rows.is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "empty matrix text".into(),
        });
    }
    let width = rows[0].0.len();
    for (entries, line, column) in &rows {
        if entries.len() != width {
            return Err(ParseError {
                line: *line,
                column: *column,
                message: format!(
                    "ragged row: expected {width} entries, found {}",
                    entries.len()
                ),
            });
        }
    }
    Ok(TropicalMatrix::from_rows(
        rows.into_iter().map(|(entries, _, _)| entries).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropvol::rat;

    #[test]
    fn parses_the_2d_worked_example() {
        let m = parse_matrix("0 1 2; 1 0 2; 0 0 0").unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.get(0, 1), &TropicalScalar::from_int(1));
        assert_eq!(m.get(2, 2), &TropicalScalar::from_int(0));
        assert!(m.is_kleene_star());
    }

    #[test]
    fn parses_infinity_case_insensitively() {
        let m = parse_matrix("0 inf\nINF 0").unwrap();
        assert_eq!(m.get(0, 1), &TropicalScalar::Infinity);
        assert_eq!(m.get(1, 0), &TropicalScalar::Infinity);
        assert_eq!(m, TropicalMatrix::identity(2));
    }

    #[test]
    fn parses_fractions_and_negatives() {
        let m = parse_matrix("1/2, -3\n-5/10, 7").unwrap();
        assert_eq!(m.get(0, 0), &TropicalScalar::finite(rat(1) / rat(2)));
        assert_eq!(m.get(0, 1), &TropicalScalar::from_int(-3));
        assert_eq!(m.get(1, 0), &TropicalScalar::finite(rat(-1) / rat(2)));
    }

    #[test]
    fn rejects_ragged_rows_with_position() {
        let err = parse_matrix("0 1; 2").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("ragged"), "{}", err.message);
    }

    #[test]
    fn rejects_bad_tokens_with_position() {
        let err = parse_matrix("0 1\n2 x").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains('x'), "{}", err.message);
    }

    #[test]
    fn rejects_zero_denominator_and_empty_text() {
        assert!(parse_matrix("1/0").unwrap_err().message.contains("zero denominator"));
        assert_eq!(parse_matrix("  \n ").unwrap_err().message, "empty matrix text");
    }

    #[test]
    fn display_round_trips() {
        let texts = ["0 1 2; 1 0 2; 0 0 0", "0 inf; inf 0", "1/2 -7/3; 0 inf"];
        for text in texts {
            let m = parse_matrix(text).unwrap();
            let again = parse_matrix(&m.to_string()).unwrap();
            assert_eq!(m, again, "round trip through Display for {text:?}");
        }
    }
}
