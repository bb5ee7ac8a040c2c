//! Hierarchical code thesaurus and the level-to-score mapping.
//!
//! Every lemma carries one or more digit-string codes. A code's prefixes
//! name its ancestor categories, so two lemmas are as similar as the
//! longest prefix shared by any pair of their codes.

use std::collections::HashMap;

use crate::corpus::Phrase;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThesaurusEntry {
    pub lemma: String,
    pub code: String,
}

#[derive(Debug, Clone, Default)]
pub struct Thesaurus {
    codes: HashMap<String, Vec<String>>,
    depth: usize,
}

impl Thesaurus {
    pub fn from_entries(entries: impl IntoIterator<Item = ThesaurusEntry>) -> Result<Self> {
        let mut t = Thesaurus::default();
        for (i, e) in entries.into_iter().enumerate() {
            t.insert(e, "<entries>", i + 1)?;
        }
        Ok(t)
    }

    /// Parses `lemma<TAB>code` lines. A lemma may appear on several lines.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut t = Thesaurus::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('%') {
                continue;
            }
            let (lemma, code) = line
                .split_once('\t')
                .ok_or_else(|| Error::lexicon(name, idx + 1, "expected `lemma<TAB>code`"))?;
            t.insert(
                ThesaurusEntry {
                    lemma: lemma.trim().to_string(),
                    code: code.trim().to_string(),
                },
                name,
                idx + 1,
            )?;
        }
        Ok(t)
    }

    fn insert(&mut self, e: ThesaurusEntry, name: &str, line: usize) -> Result<()> {
        if e.lemma.is_empty() {
            return Err(Error::lexicon(name, line, "empty lemma"));
        }
        if e.code.is_empty() || !e.code.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::lexicon(
                name,
                line,
                format!("code `{}` is not a nonempty digit string", e.code),
            ));
        }
        if self.depth == 0 {
            self.depth = e.code.len();
        } else if e.code.len() != self.depth {
            return Err(Error::lexicon(
                name,
                line,
                format!(
                    "code `{}` has depth {}, expected {}",
                    e.code,
                    e.code.len(),
                    self.depth
                ),
            ));
        }
        let codes = self.codes.entry(e.lemma).or_default();
        if !codes.contains(&e.code) {
            codes.push(e.code);
        }
        Ok(())
    }

    /// Full code depth (0 for an empty thesaurus).
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self, lemma: &str) -> &[String] {
        self.codes.get(lemma).map_or(&[], |c| c.as_slice())
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.codes.contains_key(lemma)
    }

    /// Codes for a phrase: its annotated codes when present, else the lemma's.
    pub fn phrase_codes<'a>(&'a self, p: &'a Phrase) -> &'a [String] {
        if p.sem_codes.is_empty() {
            self.codes(&p.lemma)
        } else {
            &p.sem_codes
        }
    }
}

fn shared_prefix(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count()
}

/// Deepest shared prefix over every pair of codes.
pub fn code_level<A: AsRef<str>, B: AsRef<str>>(a: &[A], b: &[B]) -> usize {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| shared_prefix(x.as_ref(), y.as_ref())))
        .max()
        .unwrap_or(0)
}

/// Similarity level of two lemmas; 0 when either is absent.
pub fn similarity_level(a: &str, b: &str, t: &Thesaurus) -> usize {
    code_level(t.codes(a), t.codes(b))
}

/// Maps similarity levels to scores, plus the level above which a match
/// against a case-frame example counts as satisfying the slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityScale {
    scores: Vec<i64>,
    match_threshold: usize,
}

impl Default for SimilarityScale {
    fn default() -> Self {
        SimilarityScale {
            scores: vec![-30, -20, -10, 0, 7, 10],
            match_threshold: 3,
        }
    }
}

impl SimilarityScale {
    /// Builds a scale from per-level scores (index = level).
    pub fn new(scores: Vec<i64>, match_threshold: usize) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::Config("similarity table is empty".into()));
        }
        if scores.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Config(format!(
                "similarity table {scores:?} is not non-decreasing"
            )));
        }
        if match_threshold + 1 >= scores.len() {
            return Err(Error::Config(format!(
                "example-match threshold {match_threshold} leaves no satisfying level in 0..={}",
                scores.len() - 1
            )));
        }
        Ok(SimilarityScale {
            scores,
            match_threshold,
        })
    }

    /// Parses `0:-30,1:-20,...`; every level from 0 to the maximum must be listed.
    pub fn parse_table(text: &str) -> Result<Vec<i64>> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (level, score) = item
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("similarity entry `{item}` lacks `:`")))?;
            let level: usize = level
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad similarity level `{level}`")))?;
            let score: i64 = score
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad similarity score `{score}`")))?;
            pairs.push((level, score));
        }
        pairs.sort();
        for (expected, (level, _)) in pairs.iter().enumerate() {
            if *level != expected {
                return Err(Error::Config(format!(
                    "similarity table must list levels 0..=n contiguously, missing {expected}"
                )));
            }
        }
        Ok(pairs.into_iter().map(|(_, s)| s).collect())
    }

    pub fn max_level(&self) -> usize {
        self.scores.len() - 1
    }

    pub fn match_threshold(&self) -> usize {
        self.match_threshold
    }

    pub fn scores(&self) -> &[i64] {
        &self.scores
    }

    /// Score for `level`; levels past the table are a contract violation.
    pub fn score(&self, level: usize) -> Result<i64> {
        self.scores.get(level).copied().ok_or_else(|| {
            Error::Contract(format!(
                "similarity level {level} outside 0..={}",
                self.max_level()
            ))
        })
    }
}

/// Free-function form of [`SimilarityScale::score`].
pub fn similarity_score(level: usize, table: &SimilarityScale) -> Result<i64> {
    table.score(level)
}
