//! "X no Y" example pairs and the noun attribute lexicon used to filter them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Multiset of `(x, y)` lemma pairs taken from "X no Y" expressions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XnoYStore {
    pairs: Vec<(String, String)>,
}

impl XnoYStore {
    pub fn from_pairs<X: Into<String>, Y: Into<String>>(
        pairs: impl IntoIterator<Item = (X, Y)>,
    ) -> Self {
        XnoYStore {
            pairs: pairs
                .into_iter()
                .map(|(x, y)| (x.into(), y.into()))
                .collect(),
        }
    }

    /// Parses `x<TAB>y` lines.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('%') {
                continue;
            }
            let (x, y) = line
                .split_once('\t')
                .map(|(x, y)| (x.trim(), y.trim()))
                .filter(|(x, y)| !x.is_empty() && !y.is_empty() && !y.contains('\t'))
                .ok_or_else(|| Error::lexicon(name, idx + 1, "expected `x<TAB>y`"))?;
            pairs.push((x.to_string(), y.to_string()));
        }
        Ok(XnoYStore { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every X recorded with `y`, unfiltered, in file order (duplicates kept).
    pub fn modifiers_of<'a>(&'a self, y: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.pairs
            .iter()
            .filter(move |(_, py)| py == y)
            .map(|(x, _)| x.as_str())
    }

    /// Distinct Y lemmas in first-seen order.
    pub fn heads(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.pairs
            .iter()
            .filter(|(_, y)| seen.insert(y.as_str()))
            .map(|(_, y)| y.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttrFlag {
    Adjectival,
    Numeral,
    Temporal,
    NonAnaphoric,
    Relational,
}

impl AttrFlag {
    /// Flags that disqualify a noun as the X of an "X no Y" example.
    pub fn excludes_modifier(self) -> bool {
        matches!(
            self,
            AttrFlag::Adjectival | AttrFlag::Numeral | AttrFlag::Temporal
        )
    }

    fn as_str(self) -> &'static str {
        match self {
            AttrFlag::Adjectival => "adjectival",
            AttrFlag::Numeral => "numeral",
            AttrFlag::Temporal => "temporal",
            AttrFlag::NonAnaphoric => "non_anaphoric",
            AttrFlag::Relational => "relational",
        }
    }
}

impl fmt::Display for AttrFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttrFlag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "adjectival" => AttrFlag::Adjectival,
            "numeral" => AttrFlag::Numeral,
            "temporal" => AttrFlag::Temporal,
            "non_anaphoric" => AttrFlag::NonAnaphoric,
            "relational" => AttrFlag::Relational,
            other => return Err(format!("unknown noun attribute `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounAttributes {
    pub lemma: String,
    pub flags: BTreeSet<AttrFlag>,
}

/// Noun attribute lexicon: lemma → nonempty flag set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AttributeLexicon {
    entries: HashMap<String, BTreeSet<AttrFlag>>,
}

impl AttributeLexicon {
    /// Parses `lemma<TAB>flag[,flag...]` lines.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut lex = AttributeLexicon::default();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('%') {
                continue;
            }
            let (lemma, flags) = line
                .split_once('\t')
                .ok_or_else(|| Error::lexicon(name, line_no, "expected `lemma<TAB>flags`"))?;
            let flags = flags
                .split(',')
                .map(str::trim)
                .filter(|f| !f.is_empty())
                .map(|f| {
                    f.parse::<AttrFlag>()
                        .map_err(|e| Error::lexicon(name, line_no, e))
                })
                .collect::<Result<BTreeSet<_>>>()?;
            if flags.is_empty() {
                return Err(Error::lexicon(name, line_no, "entry has no flags"));
            }
            lex.entries
                .entry(lemma.trim().to_string())
                .or_default()
                .extend(flags);
        }
        Ok(lex)
    }

    pub fn insert(&mut self, lemma: &str, flag: AttrFlag) {
        self.entries
            .entry(lemma.to_string())
            .or_default()
            .insert(flag);
    }

    pub fn get(&self, lemma: &str) -> Option<NounAttributes> {
        self.entries.get(lemma).map(|flags| NounAttributes {
            lemma: lemma.to_string(),
            flags: flags.clone(),
        })
    }

    pub fn has(&self, lemma: &str, flag: AttrFlag) -> bool {
        self.entries.get(lemma).is_some_and(|f| f.contains(&flag))
    }

    /// True when `lemma` may not serve as X in "X no Y".
    pub fn excluded_modifier(&self, lemma: &str) -> bool {
        self.entries
            .get(lemma)
            .is_some_and(|f| f.iter().any(|flag| flag.excludes_modifier()))
    }
}

/// X lemmas usable as evidence for head noun `y`, after both exclusion filters.
pub fn xnoy_modifier_set(y: &str, store: &XnoYStore, attrs: &AttributeLexicon) -> BTreeSet<String> {
    if attrs.has(y, AttrFlag::NonAnaphoric) {
        return BTreeSet::new();
    }
    store
        .modifiers_of(y)
        .filter(|x| !attrs.excluded_modifier(x))
        .map(String::from)
        .collect()
}
