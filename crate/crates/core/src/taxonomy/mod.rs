//! In-memory hypernym taxonomy.
//!
//! A [`Taxonomy`] is built once (from the portable line format or from a
//! WordNet database directory via [`wndb`]) and is read-only afterwards, so a
//! single instance can be shared by every worker of a corpus run.

pub mod portable;
pub mod wndb;

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use portable::PortableRecord;

/// WordNet part of speech. Adjective satellites are folded into `Adjective`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb];

    pub fn as_char(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adjective => 'a',
            Pos::Adverb => 'r',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Pos> {
        match tag {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            "a" | "s" => Some(Pos::Adjective),
            "r" => Some(Pos::Adverb),
            _ => None,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: String,
    pub pos: Pos,
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub examples: Vec<String>,
    pub hypernyms: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Taxonomy {
    synsets: Vec<Synset>,
    by_id: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    lemma_index: [HashMap<String, Vec<usize>>; 4],
    roots: Vec<usize>,
    fingerprint: String,
}

impl Taxonomy {
    /// Parses the portable line format. The fingerprint is the SHA-256 of
    /// `text`'s bytes.
    pub fn parse_portable(text: &str) -> Result<Self> {
        let records = portable::parse_records(text)?;
        let mut taxonomy = Self::from_records(records)?;
        taxonomy.fingerprint = sha256_hex(text.as_bytes());
        Ok(taxonomy)
    }

    /// Reads and parses a portable taxonomy file.
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_portable(&text)
    }

    /// Validates records and builds the indexes. The fingerprint is taken
    /// over the canonical portable serialization of `records`.
    pub fn from_records(records: Vec<PortableRecord>) -> Result<Self> {
        let fingerprint = sha256_hex(portable::write_records(&records).as_bytes());

        let mut by_id = HashMap::with_capacity(records.len());
        for (idx, record) in records.iter().enumerate() {
            if by_id.insert(record.synset.id.clone(), idx).is_some() {
                return Err(Error::DuplicateSynset(record.synset.id.clone()));
            }
        }

        let mut parents = Vec::with_capacity(records.len());
        for record in &records {
            let mut ps = Vec::with_capacity(record.synset.hypernyms.len());
            for h in &record.synset.hypernyms {
                match by_id.get(h) {
                    Some(&p) => {
                        if !ps.contains(&p) {
                            ps.push(p);
                        }
                    }
                    None => {
                        return Err(Error::DanglingHypernym {
                            from: record.synset.id.clone(),
                            missing: h.clone(),
                        })
                    }
                }
            }
            parents.push(ps);
        }

        // Sense order: explicitly ranked senses first (by rank), then the rest
        // in record order.
        let mut ranked: [HashMap<String, Vec<(u32, usize)>>; 4] = Default::default();
        for (idx, record) in records.iter().enumerate() {
            let ranks = record
                .lemma_ranks
                .iter()
                .copied()
                .chain(std::iter::repeat(None));
            for (lemma, rank) in record.synset.lemmas.iter().zip(ranks) {
                ranked[record.synset.pos as usize]
                    .entry(lemma.clone())
                    .or_default()
                    .push((rank.unwrap_or(u32::MAX), idx));
            }
        }
        let lemma_index = ranked.map(|by_lemma| {
            by_lemma
                .into_iter()
                .map(|(lemma, mut senses)| {
                    senses.sort();
                    let mut seen = std::collections::HashSet::new();
                    senses.retain(|s| seen.insert(s.1));
                    (lemma, senses.into_iter().map(|s| s.1).collect())
                })
                .collect()
        });

        let synsets: Vec<Synset> = records.into_iter().map(|r| r.synset).collect();
        let roots = (0..synsets.len())
            .filter(|&i| parents[i].is_empty())
            .collect();

        let taxonomy = Taxonomy {
            synsets,
            by_id,
            parents,
            lemma_index,
            roots,
            fingerprint,
        };
        taxonomy.check_acyclic()?;
        Ok(taxonomy)
    }

    fn check_acyclic(&self) -> Result<()> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut color = vec![WHITE; self.synsets.len()];
        for start in 0..self.synsets.len() {
            if color[start] != WHITE {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = GREY;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&parent) = self.parents[node].get(*next) {
                    *next += 1;
                    match color[parent] {
                        WHITE => {
                            color[parent] = GREY;
                            stack.push((parent, 0));
                        }
                        GREY => return Err(Error::HypernymCycle(self.synsets[parent].id.clone())),
                        _ => {}
                    }
                } else {
                    color[node] = BLACK;
                    stack.pop();
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    pub fn get(&self, id: &str) -> Option<&Synset> {
        self.by_id.get(id).map(|&i| &self.synsets[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn synset(&self, idx: usize) -> &Synset {
        &self.synsets[idx]
    }

    pub fn parents_of(&self, idx: usize) -> &[usize] {
        &self.parents[idx]
    }

    pub fn roots(&self) -> impl Iterator<Item = &str> {
        self.roots.iter().map(|&i| self.synsets[i].id.as_str())
    }

    /// Senses of `lemma` with the given part of speech, most frequent first.
    pub fn senses(&self, lemma: &str, pos: Pos) -> &[usize] {
        self.lemma_index[pos as usize]
            .get(lemma)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// All ancestors of `id` plus `id` itself, breadth-first; each level is
    /// ordered by id.
    pub fn hypernym_closure(&self, id: &str) -> Result<Vec<&str>> {
        let idx = self
            .index_of(id)
            .ok_or_else(|| Error::UnknownSynset(id.to_owned()))?;
        Ok(self
            .closure_with_depth(idx)
            .into_iter()
            .map(|(i, _)| self.synsets[i].id.as_str())
            .collect())
    }

    /// Closure of `idx` paired with the minimum number of hypernym hops from
    /// `idx` to each member.
    pub fn closure_with_depth(&self, idx: usize) -> Vec<(usize, u32)> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(idx);
        let mut out = vec![(idx, 0)];
        let mut level = vec![idx];
        let mut depth = 0;
        while !level.is_empty() {
            depth += 1;
            let mut next: Vec<usize> = level
                .iter()
                .flat_map(|&n| self.parents[n].iter().copied())
                .filter(|p| seen.insert(*p))
                .collect();
            next.sort_by(|&a, &b| self.synsets[a].id.cmp(&self.synsets[b].id));
            out.extend(next.iter().map(|&n| (n, depth)));
            level = next;
        }
        out
    }

    /// Canonical portable serialization, including sense ranks.
    pub fn to_portable(&self) -> String {
        let records: Vec<PortableRecord> = self
            .synsets
            .iter()
            .enumerate()
            .map(|(idx, s)| PortableRecord {
                lemma_ranks: s
                    .lemmas
                    .iter()
                    .map(|l| {
                        self.senses(l, s.pos)
                            .iter()
                            .position(|&i| i == idx)
                            .map(|p| p as u32 + 1)
                    })
                    .collect(),
                synset: s.clone(),
            })
            .collect();
        portable::write_records(&records)
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
