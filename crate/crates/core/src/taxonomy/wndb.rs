//! Reader for the WordNet 3.x plain-text database (`data.*` / `index.*`).
//!
//! Only hypernym (`@`) and instance-hypernym (`@i`) pointers are kept. Synset
//! ids follow the `lemma.pos.NN` convention: the first lemma of the synset
//! and the synset's position among that lemma's senses in the index file.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use super::portable::{write_records, PortableRecord};
use super::{Pos, Synset};
use crate::error::{Error, Result};

const FILE_STEMS: [(Pos, &str); 4] = [
    (Pos::Noun, "noun"),
    (Pos::Verb, "verb"),
    (Pos::Adjective, "adj"),
    (Pos::Adverb, "adv"),
];

/// Raw contents of one part of speech's index and data files.
#[derive(Debug, Clone)]
pub struct WndbPart {
    pub pos: Pos,
    pub index_path: PathBuf,
    pub index: Vec<u8>,
    pub data_path: PathBuf,
    pub data: Vec<u8>,
}

/// Result of reading a WordNet database.
#[derive(Debug, Clone)]
pub struct Conversion {
    pub records: Vec<PortableRecord>,
    /// `(child, parent)` hypernym edges removed to make the graph acyclic.
    pub dropped_edges: Vec<(String, String)>,
}

impl Conversion {
    pub fn to_portable(&self) -> String {
        write_records(&self.records)
    }
}

/// Converts a WordNet database directory into portable taxonomy text.
pub fn convert_wndb(dir: impl AsRef<Path>) -> Result<Conversion> {
    read_wndb(dir)
}

pub fn read_wndb(dir: impl AsRef<Path>) -> Result<Conversion> {
    let dir = dir.as_ref();
    let mut parts = Vec::with_capacity(4);
    for (pos, stem) in FILE_STEMS {
        let index_path = dir.join(format!("index.{stem}"));
        let data_path = dir.join(format!("data.{stem}"));
        let index = std::fs::read(&index_path).map_err(|e| Error::io(&index_path, e))?;
        let data = std::fs::read(&data_path).map_err(|e| Error::io(&data_path, e))?;
        parts.push(WndbPart {
            pos,
            index_path,
            index,
            data_path,
            data,
        });
    }
    records_from_parts(&parts)
}

struct RawSynset {
    pos: Pos,
    offset: u64,
    line_offset: usize,
    lemmas: Vec<String>,
    hypernyms: Vec<(Pos, u64)>,
    gloss: String,
    examples: Vec<String>,
}

/// Builds portable records from in-memory database parts.
pub fn records_from_parts(parts: &[WndbPart]) -> Result<Conversion> {
    let mut senses: HashMap<(String, Pos), Vec<u64>> = HashMap::new();
    for part in parts {
        parse_index(part, &mut senses)?;
    }

    let mut raw = Vec::new();
    let mut data_file: HashMap<Pos, &Path> = HashMap::new();
    for part in parts {
        data_file.insert(part.pos, &part.data_path);
        parse_data(part, &mut raw)?;
    }

    let rank_of = |lemma: &str, pos: Pos, offset: u64| -> Option<u32> {
        senses
            .get(&(lemma.to_owned(), pos))
            .and_then(|list| list.iter().position(|&o| o == offset))
            .map(|p| p as u32 + 1)
    };

    // Natural ids first, so fallback numbering never steals one.
    let mut ids: Vec<Option<String>> = Vec::with_capacity(raw.len());
    let mut used = HashSet::new();
    for s in &raw {
        let id = rank_of(&s.lemmas[0], s.pos, s.offset)
            .map(|rank| format!("{}.{}.{:02}", s.lemmas[0], s.pos, rank))
            .filter(|id| used.insert(id.clone()));
        ids.push(id);
    }
    for (s, id) in raw.iter().zip(ids.iter_mut()) {
        if id.is_none() {
            let mut n = senses
                .get(&(s.lemmas[0].clone(), s.pos))
                .map_or(0, Vec::len)
                + 1;
            loop {
                let candidate = format!("{}.{}.{:02}", s.lemmas[0], s.pos, n);
                if used.insert(candidate.clone()) {
                    *id = Some(candidate);
                    break;
                }
                n += 1;
            }
        }
    }
    let ids: Vec<String> = ids.into_iter().map(Option::unwrap).collect();

    let by_key: HashMap<(Pos, u64), usize> = raw
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.pos, s.offset), i))
        .collect();

    let mut records = Vec::with_capacity(raw.len());
    for (i, s) in raw.iter().enumerate() {
        let mut hypernyms: Vec<String> = Vec::with_capacity(s.hypernyms.len());
        for target in &s.hypernyms {
            let Some(&t) = by_key.get(target) else {
                return Err(Error::MalformedWndb {
                    file: data_file[&s.pos].to_path_buf(),
                    offset: s.line_offset,
                    message: format!(
                        "hypernym pointer to missing synset {:08} ({})",
                        target.1, target.0
                    ),
                });
            };
            if !hypernyms.contains(&ids[t]) {
                hypernyms.push(ids[t].clone());
            }
        }
        let lemma_ranks = s
            .lemmas
            .iter()
            .map(|l| rank_of(l, s.pos, s.offset))
            .collect();
        records.push(PortableRecord {
            synset: Synset {
                id: ids[i].clone(),
                pos: s.pos,
                lemmas: s.lemmas.clone(),
                gloss: s.gloss.clone(),
                examples: s.examples.clone(),
                hypernyms,
            },
            lemma_ranks,
        });
    }
    let dropped_edges = break_cycles(&mut records);
    Ok(Conversion {
        records,
        dropped_edges,
    })
}

/// WordNet 3.0 has a verb hypernym cycle (restrain.v.01 / inhibit.v.04).
/// A depth-first walk in record order removes every edge that closes a cycle.
fn break_cycles(records: &mut [PortableRecord]) -> Vec<(String, String)> {
    let index: HashMap<&str, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.synset.id.as_str(), i))
        .collect();
    let parents: Vec<Vec<usize>> = records
        .iter()
        .map(|r| {
            r.synset
                .hypernyms
                .iter()
                .map(|h| index[h.as_str()])
                .collect()
        })
        .collect();

    let mut back_edges = Vec::new();
    let mut state = vec![0u8; records.len()];
    for start in 0..records.len() {
        if state[start] != 0 {
            continue;
        }
        state[start] = 1;
        let mut stack = vec![(start, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (node, next) = (top.0, top.1);
            if let Some(&parent) = parents[node].get(next) {
                top.1 += 1;
                match state[parent] {
                    0 => {
                        state[parent] = 1;
                        stack.push((parent, 0));
                    }
                    1 => back_edges.push((node, parent)),
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
    }

    let mut dropped = Vec::with_capacity(back_edges.len());
    for (child, parent) in back_edges {
        let parent_id = records[parent].synset.id.clone();
        records[child].synset.hypernyms.retain(|h| *h != parent_id);
        dropped.push((records[child].synset.id.clone(), parent_id));
    }
    dropped
}

/// Yields `(byte offset, line)` for every line that is not part of the
/// license header (header lines start with two spaces).
fn content_lines(bytes: &[u8]) -> impl Iterator<Item = (usize, String)> + '_ {
    let mut offset = 0;
    bytes.split(|&b| b == b'\n').filter_map(move |line| {
        let start = offset;
        offset += line.len() + 1;
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if line.is_empty() || line.starts_with(b"  ") {
            return None;
        }
        let text = match std::str::from_utf8(line) {
            Ok(s) => s.to_owned(),
            Err(_) => line.iter().map(|&b| b as char).collect(),
        };
        Some((start, text))
    })
}

fn parse_index(part: &WndbPart, senses: &mut HashMap<(String, Pos), Vec<u64>>) -> Result<()> {
    for (offset, line) in content_lines(&part.index) {
        let err = |message: String| Error::MalformedWndb {
            file: part.index_path.clone(),
            offset,
            message,
        };
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        if fields.len() < 4 {
            return Err(err("truncated index line".into()));
        }
        let synset_cnt = parse_num(fields[2], 10).map_err(&err)? as usize;
        let p_cnt = parse_num(fields[3], 10).map_err(&err)? as usize;
        let first_offset = 4 + p_cnt + 2;
        if fields.len() < first_offset + synset_cnt {
            return Err(err(format!(
                "expected {synset_cnt} synset offsets after {p_cnt} pointer symbols"
            )));
        }
        let offsets = fields[first_offset..first_offset + synset_cnt]
            .iter()
            .map(|f| parse_num(f, 10))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(&err)?;
        senses.insert((fields[0].to_lowercase(), part.pos), offsets);
    }
    Ok(())
}

fn parse_data(part: &WndbPart, out: &mut Vec<RawSynset>) -> Result<()> {
    for (line_offset, line) in content_lines(&part.data) {
        let err = |message: String| Error::MalformedWndb {
            file: part.data_path.clone(),
            offset: line_offset,
            message,
        };
        let (columns, gloss) = line
            .split_once('|')
            .ok_or_else(|| err("missing gloss separator `|`".into()))?;
        let fields: Vec<&str> = columns.split_ascii_whitespace().collect();
        if fields.len() < 4 {
            return Err(err("truncated data line".into()));
        }
        let offset = parse_num(fields[0], 10).map_err(&err)?;
        let ss_pos = Pos::from_tag(fields[2])
            .ok_or_else(|| err(format!("invalid synset type `{}`", fields[2])))?;
        if ss_pos != part.pos {
            return Err(err(format!(
                "synset type `{}` in {} file",
                fields[2], part.pos
            )));
        }
        let w_cnt = parse_num(fields[3], 16).map_err(&err)? as usize;
        if w_cnt == 0 {
            return Err(err("synset without words".into()));
        }
        let p_cnt_at = 4 + 2 * w_cnt;
        if fields.len() <= p_cnt_at {
            return Err(err(format!("expected {w_cnt} words")));
        }
        let lemmas = (0..w_cnt).map(|i| clean_lemma(fields[4 + 2 * i])).collect();
        let p_cnt = parse_num(fields[p_cnt_at], 10).map_err(&err)? as usize;
        if fields.len() < p_cnt_at + 1 + 4 * p_cnt {
            return Err(err(format!("expected {p_cnt} pointers")));
        }
        let mut hypernyms = Vec::new();
        for ptr in fields[p_cnt_at + 1..p_cnt_at + 1 + 4 * p_cnt].chunks(4) {
            if ptr[0] == "@" || ptr[0] == "@i" {
                let target = parse_num(ptr[1], 10).map_err(&err)?;
                let target_pos = Pos::from_tag(ptr[2])
                    .ok_or_else(|| err(format!("invalid pointer pos `{}`", ptr[2])))?;
                hypernyms.push((target_pos, target));
            }
        }
        let (definition, examples) = split_gloss(gloss);
        out.push(RawSynset {
            pos: part.pos,
            offset,
            line_offset,
            lemmas,
            hypernyms,
            gloss: definition,
            examples,
        });
    }
    Ok(())
}

fn parse_num(s: &str, radix: u32) -> std::result::Result<u64, String> {
    u64::from_str_radix(s, radix).map_err(|_| format!("invalid number `{s}`"))
}

/// Lowercases and drops the adjective syntactic marker, e.g. `galore(ip)`.
fn clean_lemma(word: &str) -> String {
    let word = match word.find('(') {
        Some(i) if word.ends_with(')') => &word[..i],
        _ => word,
    };
    word.to_lowercase()
}

/// Splits a WordNet gloss into its definition and the quoted examples.
fn split_gloss(gloss: &str) -> (String, Vec<String>) {
    let mut examples = Vec::new();
    let mut rest = String::new();
    let mut parts = gloss.split('"');
    let mut quoted = false;
    let mut pending: Option<&str> = parts.next();
    while let Some(part) = pending {
        let next = parts.next();
        if quoted && next.is_some() {
            let e = part.trim();
            if !e.is_empty() {
                examples.push(e.to_owned());
            }
        } else {
            if quoted {
                rest.push('"');
            }
            rest.push_str(part);
        }
        quoted = !quoted;
        pending = next;
    }
    let definition = rest
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("; ");
    (definition, examples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gloss_split() {
        let (d, e) = split_gloss(
            " a member of the genus Canis; \"the dog barked all night\"; \"a good dog\"  ",
        );
        assert_eq!(d, "a member of the genus Canis");
        assert_eq!(e, vec!["the dog barked all night", "a good dog"]);

        let (d, e) = split_gloss(" a highly unstable radioactive element; a decay product  ");
        assert_eq!(d, "a highly unstable radioactive element; a decay product");
        assert!(e.is_empty());
    }

    #[test]
    fn lemma_markers_stripped() {
        assert_eq!(clean_lemma("Galore(ip)"), "galore");
        assert_eq!(clean_lemma("chemical_element"), "chemical_element");
    }
}
