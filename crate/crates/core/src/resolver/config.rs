//! Resolver configuration (`key=value` file).
//!
//! ```text
//! p.definite = 0
//! p.indefinite = -5
//! p.generic = -5
//! similarity = 0:-30,1:-20,2:-10,3:0,4:7,5:10
//! example_threshold = 3
//! subject_base = 23
//! r1_points = 30
//! r2_points = 10
//! r3_points = 10
//! r6_points = 30
//! weights = weights.tsv
//! semantics = on
//! ```

use std::path::Path;

use crate::error::{read_file, Error, Result};
use crate::lexicon::{LexiconSet, SimilarityScale};
use crate::salience::WeightTable;

/// Referential property after the `auto` default has been applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definiteness {
    Definite,
    Indefinite,
    Generic,
}

/// Definiteness score P per referential property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefinitenessTable {
    pub definite: i64,
    pub indefinite: i64,
    pub generic: i64,
}

impl Default for DefinitenessTable {
    fn default() -> Self {
        DefinitenessTable {
            definite: 0,
            indefinite: -5,
            generic: -5,
        }
    }
}

impl DefinitenessTable {
    pub fn score(&self, property: Definiteness) -> i64 {
        match property {
            Definiteness::Definite => self.definite,
            Definiteness::Indefinite => self.indefinite,
            Definiteness::Generic => self.generic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolverConfig {
    pub definiteness: DefinitenessTable,
    pub similarity: SimilarityScale,
    pub weights: WeightTable,
    pub subject_base: i64,
    pub r1_points: i64,
    pub r2_points: i64,
    pub r3_points: i64,
    pub r6_points: i64,
    /// When false every S is fixed to 0 and case-frame constraints stop filtering.
    pub semantics: bool,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        ResolverConfig {
            definiteness: DefinitenessTable::default(),
            similarity: SimilarityScale::default(),
            weights: WeightTable::default(),
            subject_base: 23,
            r1_points: 30,
            r2_points: 10,
            r3_points: 10,
            r6_points: 30,
            semantics: true,
        }
    }
}

fn int(key: &str, value: &str) -> Result<i64> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}` expects an integer, got `{value}`")))
}

impl ResolverConfig {
    /// Parses a configuration; `base_dir` resolves a relative `weights` path.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut cfg = ResolverConfig::default();
        let mut table: Option<Vec<i64>> = None;
        let mut threshold: Option<usize> = None;

        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected key=value, got `{line}`",
                    idx + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "p.definite" => cfg.definiteness.definite = int(key, value)?,
                "p.indefinite" => cfg.definiteness.indefinite = int(key, value)?,
                "p.generic" => cfg.definiteness.generic = int(key, value)?,
                "similarity" => table = Some(SimilarityScale::parse_table(value)?),
                "example_threshold" => {
                    threshold = Some(value.parse().map_err(|_| {
                        Error::Config(format!("`{key}` expects a level, got `{value}`"))
                    })?)
                }
                "subject_base" => cfg.subject_base = int(key, value)?,
                "r1_points" => cfg.r1_points = int(key, value)?,
                "r2_points" => cfg.r2_points = int(key, value)?,
                "r3_points" => cfg.r3_points = int(key, value)?,
                "r6_points" => cfg.r6_points = int(key, value)?,
                "weights" => {
                    let path = match base_dir {
                        Some(dir) => dir.join(value),
                        None => value.into(),
                    };
                    let text = read_file(&path).map_err(|e| Error::Config(e.to_string()))?;
                    cfg.weights = WeightTable::parse(&text)?;
                }
                "semantics" => {
                    cfg.semantics = match value {
                        "on" => true,
                        "off" => false,
                        other => {
                            return Err(Error::Config(format!(
                                "`semantics` expects on|off, got `{other}`"
                            )))
                        }
                    }
                }
                other => return Err(Error::Config(format!("unknown key `{other}`"))),
            }
        }

        let default = SimilarityScale::default();
        cfg.similarity = SimilarityScale::new(
            table.unwrap_or_else(|| default.scores().to_vec()),
            threshold.unwrap_or(default.match_threshold()),
        )?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read_file(path).map_err(|e| Error::Config(e.to_string()))?;
        Self::parse(&text, path.parent())
    }

    /// Checks that the similarity table covers every level the thesaurus can produce.
    pub fn check(&self, lex: &LexiconSet) -> Result<()> {
        let depth = lex.thesaurus.depth();
        if depth > self.similarity.max_level() {
            return Err(Error::Config(format!(
                "similarity table covers levels 0..={} but thesaurus depth is {depth}",
                self.similarity.max_level()
            )));
        }
        Ok(())
    }
}
