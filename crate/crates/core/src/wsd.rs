//! Tokenization and gloss-overlap (Lesk) word sense disambiguation.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::taxonomy::{Pos, Taxonomy};

/// Default English stopword list, one word per line.
pub const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub position: usize,
    /// False for stopwords. Stopwords keep their position in the stream.
    pub content: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsdConfig {
    /// Context tokens considered on each side of the target.
    pub window: usize,
    /// Drop URLs, `@mentions` and `#hashtags` before tokenizing.
    pub clean_social: bool,
    pub stopwords: BTreeSet<String>,
}

impl Default for WsdConfig {
    fn default() -> Self {
        WsdConfig {
            window: 3,
            clean_social: false,
            stopwords: parse_stopwords(DEFAULT_STOPWORDS),
        }
    }
}

impl WsdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses a stopword file: one word per line, blank lines ignored.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect()
}

fn is_social(chunk: &str) -> bool {
    let chunk = chunk.trim_start_matches(|c: char| "([{<\"'".contains(c));
    chunk.starts_with('@')
        || chunk.starts_with('#')
        || chunk.contains("://")
        || chunk.to_lowercase().starts_with("www.")
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Appends the words of `chunk` (alphabetic runs, joined across single
/// internal hyphens or apostrophes) to `out`.
fn words_in<'a>(chunk: &'a str, out: &mut Vec<&'a str>) {
    let chars: Vec<(usize, char)> = chunk.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphabetic() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        loop {
            while j < chars.len() && chars[j].1.is_alphabetic() {
                j += 1;
            }
            if j + 1 < chars.len() && is_joiner(chars[j].1) && chars[j + 1].1.is_alphabetic() {
                j += 1;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(chunk.len(), |c| c.0);
        out.push(&chunk[start..end]);
        i = j;
    }
}

pub fn tokenize(text: &str, config: &WsdConfig) -> Vec<Token> {
    let mut words = Vec::new();
    for chunk in text.split_whitespace() {
        if config.clean_social && is_social(chunk) {
            continue;
        }
        words_in(chunk, &mut words);
    }
    words
        .into_iter()
        .enumerate()
        .map(|(position, surface)| {
            let normalized = surface.to_lowercase();
            Token {
                content: !config.stopwords.contains(&normalized),
                surface: surface.to_owned(),
                normalized,
                position,
            }
        })
        .collect()
}

/// Content words of a synset's gloss, examples and lemmas.
fn sense_bag(taxonomy: &Taxonomy, idx: usize, stopwords: &BTreeSet<String>) -> HashSet<String> {
    let synset = taxonomy.synset(idx);
    let mut words = Vec::new();
    for chunk in synset.gloss.split_whitespace() {
        words_in(chunk, &mut words);
    }
    for example in &synset.examples {
        for chunk in example.split_whitespace() {
            words_in(chunk, &mut words);
        }
    }
    for lemma in &synset.lemmas {
        for chunk in lemma.split(['_', ' ']) {
            words_in(chunk, &mut words);
        }
    }
    words
        .into_iter()
        .map(str::to_lowercase)
        .filter(|w| !stopwords.contains(w))
        .collect()
}

fn context_bag(tokens: &[Token], i: usize, window: usize) -> HashSet<&str> {
    let lo = i.saturating_sub(window);
    let hi = (i + window).min(tokens.len() - 1);
    (lo..=hi)
        .filter(|&j| j != i && tokens[j].content)
        .map(|j| tokens[j].normalized.as_str())
        .collect()
}

/// Candidate senses of `word` over every part of speech, ordered by sense
/// rank within their part of speech and then by id.
fn candidates(taxonomy: &Taxonomy, word: &str) -> Vec<usize> {
    let mut ranked: Vec<(usize, &str, usize)> = Pos::ALL
        .iter()
        .flat_map(|&pos| {
            taxonomy
                .senses(word, pos)
                .iter()
                .enumerate()
                .map(|(rank, &idx)| (rank, taxonomy.synset(idx).id.as_str(), idx))
        })
        .collect();
    ranked.sort();
    ranked.dedup_by_key(|c| c.2);
    ranked.into_iter().map(|c| c.2).collect()
}

/// First candidate with the largest overlap.
fn best_sense(candidates: &[usize], overlap_of: impl Fn(usize) -> usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for &idx in candidates {
        let overlap = overlap_of(idx);
        if best.is_none_or(|(_, b)| overlap > b) {
            best = Some((idx, overlap));
        }
    }
    best.map(|(idx, _)| idx)
}

/// Disambiguates the token at position `i`. Returns `None` when the word has
/// no senses in the taxonomy or the token is a stopword.
pub fn lesk_disambiguate<'t>(
    tokens: &[Token],
    i: usize,
    taxonomy: &'t Taxonomy,
    config: &WsdConfig,
) -> Result<Option<&'t str>> {
    Ok(Disambiguator::new(taxonomy, config)
        .disambiguate(tokens, i)?
        .map(|idx| taxonomy.synset(idx).id.as_str()))
}

/// Lesk with per-synset bags computed once and shared across threads.
pub struct Disambiguator<'t> {
    taxonomy: &'t Taxonomy,
    config: &'t WsdConfig,
    bags: Vec<OnceLock<HashSet<String>>>,
}

impl<'t> Disambiguator<'t> {
    pub fn new(taxonomy: &'t Taxonomy, config: &'t WsdConfig) -> Self {
        let mut bags = Vec::with_capacity(taxonomy.len());
        bags.resize_with(taxonomy.len(), OnceLock::new);
        Disambiguator {
            taxonomy,
            config,
            bags,
        }
    }

    pub fn taxonomy(&self) -> &'t Taxonomy {
        self.taxonomy
    }

    fn bag(&self, idx: usize) -> &HashSet<String> {
        self.bags[idx].get_or_init(|| sense_bag(self.taxonomy, idx, &self.config.stopwords))
    }

    /// Index of the chosen synset for token `i`.
    pub fn disambiguate(&self, tokens: &[Token], i: usize) -> Result<Option<usize>> {
        let token = tokens.get(i).ok_or(Error::PositionOutOfRange {
            position: i,
            len: tokens.len(),
        })?;
        if !token.content {
            return Ok(None);
        }
        let candidates = candidates(self.taxonomy, &token.normalized);
        if candidates.len() <= 1 {
            return Ok(candidates.first().copied());
        }
        let context = context_bag(tokens, i, self.config.window);
        Ok(best_sense(&candidates, |idx| {
            let bag = self.bag(idx);
            context.iter().filter(|w| bag.contains(**w)).count()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.normalized.as_str()).collect()
    }

    #[test]
    fn tokenize_sentence() {
        let tokens = tokenize("River bank was enforced.", &WsdConfig::default());
        assert_eq!(words(&tokens), vec!["river", "bank", "was", "enforced"]);
        assert_eq!(tokens[0].surface, "River");
        assert!(!tokens[2].content);
        assert_eq!(
            tokens.iter().map(|t| t.position).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("", &WsdConfig::default()).is_empty());
        assert!(tokenize(" 42 ... ", &WsdConfig::default()).is_empty());
    }

    #[test]
    fn social_cleaning() {
        let cfg = WsdConfig {
            clean_social: true,
            ..WsdConfig::default()
        };
        let text = "see http://x.co @bob #fun stuff";
        assert_eq!(words(&tokenize(text, &cfg)), vec!["see", "stuff"]);
        assert_eq!(
            words(&tokenize(text, &WsdConfig::default())),
            vec!["see", "http", "x", "co", "bob", "fun", "stuff"]
        );
    }

    #[test]
    fn internal_joiners_kept() {
        let tokens = tokenize("X-ray isn't 'quoted' end- -start", &WsdConfig::default());
        assert_eq!(
            words(&tokens),
            vec!["x-ray", "isn't", "quoted", "end", "start"]
        );
        assert!(!tokens[1].content);
    }

    fn bank_taxonomy() -> Taxonomy {
        Taxonomy::parse_portable(
            "bank.n.01\tn\tbank\tsloping land beside a body of river water land\t\t\n\
bank.n.02\tn\tbank\ta money financial institution\t\t\n\
solo.n.01\tn\tsolo\ta piece for one performer\t\t\n",
        )
        .unwrap()
    }

    #[test]
    fn lesk_picks_overlapping_sense() {
        let t = bank_taxonomy();
        let cfg = WsdConfig::default();
        let river = tokenize("River bank was enforced.", &cfg);
        assert_eq!(
            lesk_disambiguate(&river, 1, &t, &cfg).unwrap(),
            Some("bank.n.01")
        );
        let money = tokenize("national bank robbed money", &cfg);
        assert_eq!(
            lesk_disambiguate(&money, 1, &t, &cfg).unwrap(),
            Some("bank.n.02")
        );
    }

    #[test]
    fn lesk_fallbacks() {
        let t = bank_taxonomy();
        let cfg = WsdConfig::default();
        let tokens = tokenize("the bank solo zebra", &cfg);
        // zero overlap everywhere: first listed sense
        assert_eq!(
            lesk_disambiguate(&tokens, 1, &t, &cfg).unwrap(),
            Some("bank.n.01")
        );
        // single sense regardless of context
        assert_eq!(
            lesk_disambiguate(&tokens, 2, &t, &cfg).unwrap(),
            Some("solo.n.01")
        );
        // not in taxonomy
        assert_eq!(lesk_disambiguate(&tokens, 3, &t, &cfg).unwrap(), None);
        // stopword
        assert_eq!(lesk_disambiguate(&tokens, 0, &t, &cfg).unwrap(), None);
        assert!(matches!(
            lesk_disambiguate(&tokens, 4, &t, &cfg),
            Err(Error::PositionOutOfRange {
                position: 4,
                len: 4
            })
        ));
    }

    #[test]
    fn window_limits_context() {
        let t = bank_taxonomy();
        let cfg = WsdConfig {
            window: 1,
            ..WsdConfig::default()
        };
        // "money" sits two positions away: outside a window of 1.
        let tokens = tokenize("bank zebra money", &cfg);
        assert_eq!(
            lesk_disambiguate(&tokens, 0, &t, &cfg).unwrap(),
            Some("bank.n.01")
        );
        let wide = WsdConfig::default();
        assert_eq!(
            lesk_disambiguate(&tokens, 0, &t, &wide).unwrap(),
            Some("bank.n.02")
        );
    }

    #[test]
    fn candidates_span_parts_of_speech() {
        let t = Taxonomy::parse_portable(
            "run.v.01\tv\trun\tmove fast on foot\t\t\n\
run.n.01\tn\trun\ta score in baseball\t\t\n\
run.n.02\tn\trun\ta race on foot\t\t\n",
        )
        .unwrap();
        let ids: Vec<_> = candidates(&t, "run")
            .into_iter()
            .map(|i| t.synset(i).id.clone())
            .collect();
        assert_eq!(ids, vec!["run.n.01", "run.v.01", "run.n.02"]);
        let cfg = WsdConfig::default();
        let tokens = tokenize("run fast", &cfg);
        assert_eq!(
            lesk_disambiguate(&tokens, 0, &t, &cfg).unwrap(),
            Some("run.v.01")
        );
    }
}
