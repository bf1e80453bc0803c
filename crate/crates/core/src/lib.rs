//! Interpretable semantic document features built from a hypernym taxonomy.
//!
//! Words are disambiguated against the taxonomy with gloss-overlap Lesk,
//! expanded to their hypernym closures, weighted with double-normalized
//! tf-idf and reduced to the `d` most useful taxonomy terms by one of several
//! selection heuristics.

pub mod corpus;
pub mod error;
pub mod io;
pub mod matrix;
pub mod pipeline;
pub mod selection;
pub mod stats;
pub mod taxonomy;
pub mod weighting;
pub mod wsd;

pub use error::{Error, Result};
pub use taxonomy::{Pos, Synset, Taxonomy};
