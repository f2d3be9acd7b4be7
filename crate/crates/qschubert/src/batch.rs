//! Polynomial sources: an inline expression, or `@path` naming a batch file
//! with one expression per line. In batch files `#` starts a comment and
//! blank lines are skipped.

use std::fs;

use qschubert_core::parser::parse_poly;
use qschubert_core::WeightedPoly;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    /// Expressions with their 1-based line numbers (line 1 for inline input).
    pub expressions: Vec<(usize, String)>,
    pub batch: bool,
}

/// Strips comments and blank lines.
pub fn batch_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let expr = line.split('#').next().unwrap_or("").trim();
            (!expr.is_empty()).then(|| (i + 1, expr.to_string()))
        })
        .collect()
}

pub fn read_source(arg: &str) -> Result<Source, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            Ok(Source {
                expressions: batch_lines(&text),
                batch: true,
            })
        }
        None => Ok(Source {
            expressions: vec![(1, arg.to_string())],
            batch: false,
        }),
    }
}

/// Parses every expression, naming the offending line on error.
pub fn parse_source(
    source: &Source,
    nvars: usize,
) -> Result<Vec<(String, WeightedPoly)>, CliError> {
    source
        .expressions
        .iter()
        .map(|(line, expr)| {
            parse_poly(expr, nvars)
                .map(|p| (expr.clone(), p))
                .map_err(|e| {
                    if source.batch {
                        CliError::Usage(format!("line {line}: {e}"))
                    } else {
                        CliError::Core(e)
                    }
                })
        })
        .collect()
}
