//! Portable taxonomy format.
//!
//! One synset per line, six tab-separated fields:
//!
//! ```text
//! id  pos  lemmas  gloss  examples  hypernyms
//! ```
//!
//! `lemmas` and `hypernyms` are comma-separated, `examples` is `|`-separated;
//! both list fields may be empty. A lemma may carry a `:N` suffix giving the
//! 1-based rank of this synset among the lemma's senses (most frequent
//! first); unranked senses sort after ranked ones, in file order. Lines that
//! start with `#` and blank lines are ignored.

use super::{Pos, Synset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortableRecord {
    pub synset: Synset,
    /// Sense rank per lemma, parallel to `synset.lemmas`.
    pub lemma_ranks: Vec<Option<u32>>,
}

impl PortableRecord {
    pub fn unranked(synset: Synset) -> Self {
        let lemma_ranks = vec![None; synset.lemmas.len()];
        PortableRecord {
            synset,
            lemma_ranks,
        }
    }
}

pub fn parse_records(text: &str) -> Result<Vec<PortableRecord>> {
    let mut records = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        records.push(parse_line(line).map_err(|message| Error::MalformedRecord {
            line: n + 1,
            message,
        })?);
    }
    Ok(records)
}

fn parse_line(line: &str) -> std::result::Result<PortableRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 6 {
        return Err(format!(
            "expected 6 tab-separated fields, found {}",
            fields.len()
        ));
    }
    let id = fields[0].trim();
    if id.is_empty() {
        return Err("empty synset id".into());
    }
    let pos = Pos::from_tag(fields[1].trim())
        .ok_or_else(|| format!("invalid part of speech `{}`", fields[1]))?;

    let mut lemmas = Vec::new();
    let mut lemma_ranks = Vec::new();
    for item in split_list(fields[2], ',') {
        let (word, rank) = match item.rsplit_once(':') {
            Some((word, rank)) => {
                let rank: u32 = rank
                    .parse()
                    .map_err(|_| format!("invalid sense rank in lemma `{item}`"))?;
                if rank == 0 {
                    return Err(format!("sense rank must be positive in `{item}`"));
                }
                (word, Some(rank))
            }
            None => (item, None),
        };
        if word.is_empty() {
            return Err("empty lemma".into());
        }
        lemmas.push(word.to_lowercase());
        lemma_ranks.push(rank);
    }
    if lemmas.is_empty() {
        return Err(format!("synset `{id}` has no lemmas"));
    }

    Ok(PortableRecord {
        synset: Synset {
            id: id.to_owned(),
            pos,
            lemmas,
            gloss: fields[3].to_owned(),
            examples: split_list(fields[4], '|').map(str::to_owned).collect(),
            hypernyms: split_list(fields[5], ',').map(str::to_owned).collect(),
        },
        lemma_ranks,
    })
}

fn split_list(field: &str, sep: char) -> impl Iterator<Item = &str> {
    field.split(sep).map(str::trim).filter(|s| !s.is_empty())
}

/// Serializes records, one line each. Characters that would break the line
/// structure are replaced with spaces (or `/` inside examples).
pub fn write_records(records: &[PortableRecord]) -> String {
    let mut out = String::new();
    for record in records {
        write_record(record, &mut out);
    }
    out
}

pub fn write_record(record: &PortableRecord, out: &mut String) {
    let s = &record.synset;
    out.push_str(&flatten(&s.id));
    out.push('\t');
    out.push(s.pos.as_char());
    out.push('\t');
    for (i, lemma) in s.lemmas.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&flatten(lemma).replace([',', ':'], "_"));
        if let Some(Some(rank)) = record.lemma_ranks.get(i) {
            out.push(':');
            out.push_str(&rank.to_string());
        }
    }
    out.push('\t');
    out.push_str(&flatten(&s.gloss));
    out.push('\t');
    let examples: Vec<String> = s
        .examples
        .iter()
        .map(|e| flatten(e).replace('|', "/"))
        .collect();
    out.push_str(&examples.join("|"));
    out.push('\t');
    out.push_str(&s.hypernyms.join(","));
    out.push('\n');
}

fn flatten(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_skipped() {
        let text = "# header\n\nentity.n.01\tn\tEntity\tthat which exists\t\t\n";
        let records = parse_records(text).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].synset.lemmas, vec!["entity"]);
        assert!(records[0].synset.hypernyms.is_empty());
        assert!(records[0].synset.examples.is_empty());
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "a.n.01\tn\ta\tx\t\t\n# c\nb.n.01\tn\tb\n";
        match parse_records(text) {
            Err(Error::MalformedRecord { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_pos_rejected() {
        assert!(matches!(
            parse_records("a.x.01\tx\ta\tg\t\t\n"),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let record = PortableRecord {
            synset: Synset {
                id: "bank.n.01".into(),
                pos: Pos::Noun,
                lemmas: vec!["bank".into(), "riverbank".into()],
                gloss: "sloping land beside water".into(),
                examples: vec!["they pulled the canoe up on the bank".into()],
                hypernyms: vec!["slope.n.01".into()],
            },
            lemma_ranks: vec![Some(1), None],
        };
        let text = write_records(std::slice::from_ref(&record));
        assert_eq!(
            text,
            "bank.n.01\tn\tbank:1,riverbank\tsloping land beside water\tthey pulled the canoe up on the bank\tslope.n.01\n"
        );
        assert_eq!(parse_records(&text).unwrap(), vec![record]);
    }
}
