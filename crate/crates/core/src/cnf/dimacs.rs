//! DIMACS CNF: `p cnf <vars> <clauses>` then zero-terminated clauses.

use std::fmt::Write;

use thiserror::Error;

use super::{CnfError, CnfFormula, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfParseError {
    #[error("line {line}: missing 'p cnf' header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: '{token}' is not a literal")]
    BadToken { line: usize, token: String },
    #[error("line {line}: header declares {declared} clauses, found {found}")]
    ClauseCount { line: usize, declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error(transparent)]
    Invalid(#[from] CnfError),
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula, CnfParseError> {
    let mut header: Option<(usize, u32, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed == "%" {
            continue;
        }
        if trimmed.starts_with('p') {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            match (header, parts.as_slice()) {
                (None, ["p", "cnf", v, m]) => {
                    let v = v.parse().map_err(|_| CnfParseError::MalformedHeader { line })?;
                    let m = m.parse().map_err(|_| CnfParseError::MalformedHeader { line })?;
                    header = Some((line, v, m));
                }
                _ => return Err(CnfParseError::MalformedHeader { line }),
            }
            continue;
        }
        if header.is_none() {
            return Err(CnfParseError::MissingHeader { line });
        }
        for token in trimmed.split_whitespace() {
            let lit: Lit = token.parse().map_err(|_| CnfParseError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(CnfParseError::Unterminated);
    }
    let (line, num_vars, declared) = header.ok_or(CnfParseError::MissingHeader {
        line: text.lines().count().max(1),
    })?;
    if declared != clauses.len() {
        return Err(CnfParseError::ClauseCount {
            line,
            declared,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula::new(num_vars, clauses)?)
}

pub fn write_cnf(f: &CnfFormula) -> String {
    write_cnf_with_comments(f, &[])
}

pub fn write_cnf_with_comments(f: &CnfFormula, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    for c in f.clauses() {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = CnfFormula::new(4, vec![vec![1, -2, 3], vec![], vec![-4]]).unwrap();
        let text = write_cnf_with_comments(&f, &["origin 0: test".to_string()]);
        assert_eq!(parse_cnf(&text).unwrap(), f);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_cnf("1 2 0\n"), Err(CnfParseError::MissingHeader { line: 1 })));
        assert!(matches!(parse_cnf("p cnf 2 2\n1 2 0\n"), Err(CnfParseError::ClauseCount { .. })));
        assert!(matches!(parse_cnf("p cnf 2 1\n1 x 0\n"), Err(CnfParseError::BadToken { line: 2, .. })));
        assert!(matches!(parse_cnf("p cnf 2 1\n1 -1 0\n"), Err(CnfParseError::Invalid(_))));
        assert!(matches!(parse_cnf("p cnf 2 1\n1 2\n"), Err(CnfParseError::Unterminated)));
        // Clauses may span lines.
        assert_eq!(parse_cnf("p cnf 3 1\n1 2\n3 0\n").unwrap().widths(), vec![3]);
    }
}
