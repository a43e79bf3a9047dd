//! CoNLL-like tab-separated trees and label files.
//!
//! Tree rows are `index form pos head deprel [lemma [supertag]]`, with `_`
//! for an absent optional column. Label rows are `form i p d`. A blank line
//! ends a sentence in both formats.

use std::io::{BufRead, Write};

use super::{DepTree, PosTag, RelPosLabel, Token, UdError};
use crate::typelogic::Formula;

fn malformed(line: usize, message: impl Into<String>) -> UdError {
    UdError::Malformed {
        line,
        message: message.into(),
    }
}

/// Groups non-blank lines into sentences, keeping 1-based line numbers.
fn sentences<R: BufRead>(reader: R) -> Result<Vec<Vec<(usize, String)>>, UdError> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else if !trimmed.starts_with('#') {
            current.push((idx + 1, trimmed.to_owned()));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

fn optional(field: Option<&&str>) -> Option<String> {
    match field {
        None | Some(&"_") => None,
        Some(s) => Some((*s).to_owned()),
    }
}

pub fn read_trees<R: BufRead>(reader: R) -> Result<Vec<DepTree>, UdError> {
    sentences(reader)?
        .into_iter()
        .map(|rows| {
            let first_line = rows[0].0;
            let mut tokens = Vec::with_capacity(rows.len());
            let mut heads = Vec::with_capacity(rows.len());
            let mut deprels = Vec::with_capacity(rows.len());
            for (k, (line, row)) in rows.iter().enumerate() {
                let cols: Vec<&str> = row.split('\t').collect();
                if !(5..=7).contains(&cols.len()) {
                    return Err(malformed(
                        *line,
                        format!("expected 5 to 7 columns, found {}", cols.len()),
                    ));
                }
                let index: usize = cols[0]
                    .parse()
                    .map_err(|_| malformed(*line, "index is not a number"))?;
                if index != k + 1 {
                    return Err(malformed(*line, format!("expected index {}", k + 1)));
                }
                let head: usize = cols[3]
                    .parse()
                    .map_err(|_| malformed(*line, "head is not a number"))?;
                let mut token = Token::new(cols[1], PosTag::new(cols[2]));
                token.lemma = optional(cols.get(5));
                if let Some(notation) = optional(cols.get(6)) {
                    let formula = Formula::parse_unchecked(&notation)
                        .map_err(|e| malformed(*line, e.to_string()))?;
                    token.supertag = Some(formula);
                }
                tokens.push(token);
                heads.push(head);
                deprels.push(cols[4].to_owned());
            }
            DepTree::new(tokens, heads, deprels).map_err(|e| malformed(first_line, e.to_string()))
        })
        .collect()
}

pub fn write_trees<W: Write>(mut writer: W, trees: &[DepTree]) -> Result<(), UdError> {
    for tree in trees {
        for (k, token) in tree.tokens().iter().enumerate() {
            write!(
                writer,
                "{}\t{}\t{}\t{}\t{}",
                k + 1,
                token.form,
                token.pos,
                tree.heads()[k],
                tree.deprels()[k]
            )?;
            if token.lemma.is_some() || token.supertag.is_some() {
                write!(writer, "\t{}", token.lemma.as_deref().unwrap_or("_"))?;
            }
            if let Some(tag) = &token.supertag {
                write!(writer, "\t{}", tag)?;
            }
            writeln!(writer)?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// One sentence of a label file: word forms with their labels.
pub type LabelledSentence = Vec<(String, RelPosLabel)>;

pub fn read_labels<R: BufRead>(reader: R) -> Result<Vec<LabelledSentence>, UdError> {
    sentences(reader)?
        .into_iter()
        .map(|rows| {
            rows.iter()
                .map(|(line, row)| {
                    let cols: Vec<&str> = row.split('\t').collect();
                    if cols.len() != 4 {
                        return Err(malformed(*line, "expected form, i, p, d"));
                    }
                    let offset: i32 = cols[1]
                        .trim_start_matches('+')
                        .parse()
                        .map_err(|_| malformed(*line, "offset is not an integer"))?;
                    Ok((
                        cols[0].to_owned(),
                        RelPosLabel::new(offset, cols[2], cols[3]),
                    ))
                })
                .collect()
        })
        .collect()
}

pub fn write_labels<W: Write>(
    mut writer: W,
    sentences: &[LabelledSentence],
) -> Result<(), UdError> {
    for sentence in sentences {
        for (form, label) in sentence {
            writeln!(
                writer,
                "{}\t{:+}\t{}\t{}",
                form, label.offset, label.head_pos, label.deprel
            )?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
