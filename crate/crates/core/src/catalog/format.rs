//! Plain-text formats for braces and solutions.
//!
//! A brace file is
//!
//! ```text
//! brace <order> <left|right>
//! <order rows of the addition table>
//!
//! <order rows of the multiplication table>
//! # optional comment lines
//! ```

use std::fmt::Write as _;

use crate::brace::{validate, Chirality, FiniteBrace};
use crate::error::{BraceError, Result};
use crate::ybe::SetSolution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceFile {
    pub brace: FiniteBrace,
    /// Comment text without the leading `# `.
    pub comments: Vec<String>,
}

fn malformed(line: usize, what: impl std::fmt::Display) -> BraceError {
    BraceError::MalformedTable(format!("line {line}: {what}"))
}

fn write_rows(out: &mut String, n: usize, table: impl Fn(usize, usize) -> usize) {
    for a in 0..n {
        for b in 0..n {
            if b > 0 {
                out.push(' ');
            }
            write!(out, "{}", table(a, b)).expect("write to String");
        }
        out.push('\n');
    }
}

pub fn serialize_brace(brace: &FiniteBrace, comments: &[String]) -> String {
    let n = brace.order();
    let mut out = format!("brace {n} {}\n", brace.chirality());
    write_rows(&mut out, n, |a, b| brace.add(a, b));
    out.push('\n');
    write_rows(&mut out, n, |a, b| brace.mul(a, b));
    for c in comments {
        writeln!(out, "# {c}").expect("write to String");
    }
    out
}

struct Lines<'t> {
    inner: std::iter::Enumerate<std::str::Lines<'t>>,
}

impl<'t> Lines<'t> {
    fn new(text: &'t str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    fn next_line(&mut self, expected: &str) -> Result<(usize, &'t str)> {
        match self.inner.next() {
            Some((i, l)) => Ok((i + 1, l.trim_end())),
            None => Err(BraceError::MalformedTable(format!("unexpected end of input, expected {expected}"))),
        }
    }

    fn rows(&mut self, n: usize, what: &str) -> Result<Vec<usize>> {
        let mut table = Vec::with_capacity(n * n);
        for r in 0..n {
            let (no, line) = self.next_line(&format!("row {r} of the {what} table"))?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| malformed(no, format!("`{t}` is not an index"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(malformed(no, format!("expected {n} entries, found {}", row.len())));
            }
            table.extend(row);
        }
        Ok(table)
    }

    fn blank(&mut self) -> Result<()> {
        let (no, line) = self.next_line("a blank separator line")?;
        if line.trim().is_empty() {
            Ok(())
        } else {
            Err(malformed(no, "expected a blank separator line"))
        }
    }
}

fn parse_header(line: &str, no: usize, keyword: &str) -> Result<Vec<String>> {
    let mut words = line.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(malformed(no, format!("header must start with `{keyword}`")));
    }
    Ok(words.map(str::to_string).collect())
}

/// Parses and validates a brace file.
pub fn parse_brace(text: &str) -> Result<BraceFile> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.next_line("the header")?;
    let words = parse_header(header, no, "brace")?;
    let [order, chirality] = words.as_slice() else {
        return Err(malformed(no, "header must be `brace <order> <left|right>`"));
    };
    let n: usize = order.parse().map_err(|_| malformed(no, format!("bad order `{order}`")))?;
    if n == 0 {
        return Err(malformed(no, "order must be positive"));
    }
    let chirality: Chirality = chirality.parse().map_err(|e| malformed(no, e))?;
    let add = lines.rows(n, "addition")?;
    lines.blank()?;
    let mul = lines.rows(n, "multiplication")?;
    let mut comments = Vec::new();
    for (i, line) in lines.inner.by_ref() {
        let line = line.trim_end();
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
        } else if !line.trim().is_empty() {
            return Err(malformed(i + 1, "only `#` comments may follow the tables"));
        }
    }
    let brace = validate(n, &add, &mul, chirality)?;
    Ok(BraceFile { brace, comments })
}

/// `solution <size>`, the σ maps one per line, a blank line, then the τ maps.
pub fn serialize_solution(sol: &SetSolution) -> String {
    let n = sol.size();
    let mut out = format!("solution {n}\n");
    write_rows(&mut out, n, |x, y| sol.sigma_images(x)[y]);
    out.push('\n');
    write_rows(&mut out, n, |y, x| sol.tau_images(y)[x]);
    out
}

pub fn parse_solution(text: &str) -> Result<SetSolution> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.next_line("the header")?;
    let words = parse_header(header, no, "solution")?;
    let [size] = words.as_slice() else {
        return Err(malformed(no, "header must be `solution <size>`"));
    };
    let n: usize = size.parse().map_err(|_| malformed(no, format!("bad size `{size}`")))?;
    let sigma = lines.rows(n, "sigma")?;
    lines.blank()?;
    let tau = lines.rows(n, "tau")?;
    let split = |t: Vec<usize>| t.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
    SetSolution::from_maps(split(sigma), split(tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIVIAL_Z2: &str = "brace 2 left\n0 1\n1 0\n\n0 0\n0 0\n# trivial\n";

    #[test]
    fn round_trip_trivial() {
        let f = parse_brace(TRIVIAL_Z2).unwrap();
        assert_eq!(f.brace, FiniteBrace::trivial_cyclic(2));
        assert_eq!(f.comments, vec!["trivial".to_string()]);
        assert_eq!(serialize_brace(&f.brace, &f.comments), TRIVIAL_Z2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let bad = "brace 2 left\n0 1\n1 0\n0 0\n0 0\n";
        let err = parse_brace(bad).unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
        assert!(parse_brace("brace 2 sideways\n").is_err());
        assert!(parse_brace("brace 2 left\n0 1\n1 x\n").is_err());
        assert!(parse_brace("").is_err());
        assert!(parse_brace("brace 2 left\n0 1\n1 0\n\n0 0\n0 0\ntrailing\n").is_err());
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let text = "brace 2 left\n0 1\n1 0\n\n0 0\n0 1\n";
        assert!(matches!(parse_brace(text), Err(BraceError::Invalid(_))));
    }

    #[test]
    fn solution_round_trip() {
        let sol = SetSolution::flip(3);
        let text = serialize_solution(&sol);
        assert!(text.starts_with("solution 3\n0 1 2\n"));
        assert_eq!(parse_solution(&text).unwrap(), sol);
    }
}
