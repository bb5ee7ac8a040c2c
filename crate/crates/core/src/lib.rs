//! Rule-based resolution of indirect (bridging) anaphora in Japanese noun
//! phrases, with an evaluation harness and a noun case frame drafting tool.

pub mod corpus;
pub mod dict;
pub mod error;
pub mod eval;
pub mod explain;
pub mod lexicon;
pub mod resolver;
pub mod salience;

pub use corpus::{parse_corpus, parse_discourse, Discourse, Phrase, PhraseId};
pub use error::{Error, Result};
pub use lexicon::LexiconSet;
pub use resolver::{Candidate, ResolutionResult, Resolver, ResolverConfig};
