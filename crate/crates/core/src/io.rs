//! Corpus TSV input and paragraph splitting.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub texts: Vec<String>,
    pub labels: Option<Vec<String>>,
}

/// Reads one document per line. With `labeled`, the first tab-separated
/// column is the class label and the rest of the line is the text.
pub fn parse_corpus(text: &str, labeled: bool) -> Result<Corpus> {
    let mut texts = Vec::new();
    let mut labels = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if labeled {
            let (label, body) = line
                .split_once('\t')
                .ok_or_else(|| Error::MalformedRecord {
                    line: n + 1,
                    message: "labeled corpus line needs `label<TAB>text`".into(),
                })?;
            let label = label.trim();
            if label.is_empty() {
                return Err(Error::MalformedRecord {
                    line: n + 1,
                    message: "empty class label".into(),
                });
            }
            labels.push(label.to_owned());
            texts.push(body.to_owned());
        } else {
            texts.push(line.to_owned());
        }
    }
    Ok(Corpus {
        texts,
        labels: labeled.then_some(labels),
    })
}

pub fn read_corpus(path: impl AsRef<std::path::Path>, labeled: bool) -> Result<Corpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text, labeled)
}

/// Splits text on blank lines; each paragraph has its whitespace collapsed
/// to single spaces so it fits on one corpus line.
pub fn split_paragraphs(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(current.join(" "));
                current.clear();
            }
        } else {
            current.extend(line.split_whitespace());
        }
    }
    if !current.is_empty() {
        out.push(current.join(" "));
    }
    out
}
