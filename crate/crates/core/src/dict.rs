//! Draft noun case frames from "X no Y" examples.
//!
//! Modifiers X of one head noun Y are grouped by their top-level thesaurus
//! category. Adjectival, numeral and temporal nouns are rejected outright;
//! members of the Character group are only flagged for the curator.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lexicon::{AttributeLexicon, Thesaurus, XnoYStore};

pub const UNKNOWN: &str = "UNKNOWN";
pub const CHARACTER: &str = "Character";

/// Code-prefix → category label table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTable {
    depth: usize,
    labels: BTreeMap<String, String>,
}

impl Default for CategoryTable {
    fn default() -> Self {
        let labels = [
            ("11", "Human"),
            ("12", "Organization"),
            ("21", "Mental"),
            ("22", "Character"),
            ("23", "Action"),
            ("24", "Relation"),
            ("31", "Product"),
            ("32", "Animal"),
            ("33", "Nature"),
            ("41", "Place"),
            ("51", "Phenomenon"),
        ];
        CategoryTable {
            depth: 2,
            labels: labels
                .into_iter()
                .map(|(p, l)| (p.to_string(), l.to_string()))
                .collect(),
        }
    }
}

impl CategoryTable {
    /// Parses `prefix<TAB>label` lines; every prefix must have the same length.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut depth = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('%') {
                continue;
            }
            let (prefix, label) = line
                .split_once('\t')
                .ok_or_else(|| Error::lexicon(name, line_no, "expected `prefix<TAB>label`"))?;
            let (prefix, label) = (prefix.trim(), label.trim());
            if prefix.is_empty() || !prefix.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::lexicon(
                    name,
                    line_no,
                    format!("bad prefix `{prefix}`"),
                ));
            }
            if label.is_empty() || label == UNKNOWN {
                return Err(Error::lexicon(
                    name,
                    line_no,
                    format!("bad label `{label}`"),
                ));
            }
            match depth {
                None => depth = Some(prefix.len()),
                Some(d) if d != prefix.len() => {
                    return Err(Error::lexicon(name, line_no, "prefix lengths differ"))
                }
                _ => {}
            }
            if labels
                .insert(prefix.to_string(), label.to_string())
                .is_some()
            {
                return Err(Error::lexicon(
                    name,
                    line_no,
                    format!("duplicate prefix `{prefix}`"),
                ));
            }
        }
        let depth = depth.ok_or_else(|| Error::lexicon(name, 0, "no categories defined"))?;
        Ok(CategoryTable { depth, labels })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Label and table position for a thesaurus code.
    fn category(&self, code: &str) -> Option<(usize, &str, &str)> {
        let prefix = code.get(..self.depth)?;
        self.labels
            .iter()
            .enumerate()
            .find(|(_, (p, _))| p.as_str() == prefix)
            .map(|(i, (p, l))| (i, p.as_str(), l.as_str()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Corpus,
    MergedFrom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub lemma: String,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub label: String,
    /// Code prefix of the category; empty for UNKNOWN.
    pub prefix: String,
    order: usize,
    /// Sorted by lemma.
    pub members: Vec<Member>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangedFrame {
    pub y_lemma: String,
    /// In category-table order, UNKNOWN last.
    pub groups: Vec<Group>,
    /// Sorted, distinct.
    pub rejected: Vec<String>,
}

impl ArrangedFrame {
    pub fn group(&self, label: &str) -> Option<&Group> {
        self.groups.iter().find(|g| g.label == label)
    }

    /// Lemmas of `label`'s group, in order.
    pub fn members_of(&self, label: &str) -> Vec<&str> {
        self.group(label)
            .map(|g| g.members.iter().map(|m| m.lemma.as_str()).collect())
            .unwrap_or_default()
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.groups
            .iter()
            .any(|g| g.members.iter().any(|m| m.lemma == lemma))
    }

    /// Character/feature members the curator is expected to review.
    pub fn flagged(&self) -> Vec<&str> {
        self.members_of(CHARACTER)
    }

    fn group_mut(&mut self, label: &str, prefix: &str, order: usize) -> &mut Group {
        let pos = match self.groups.iter().position(|g| g.label == label) {
            Some(pos) => pos,
            None => {
                let pos = self.groups.partition_point(|g| g.order <= order);
                self.groups.insert(
                    pos,
                    Group {
                        label: label.to_string(),
                        prefix: prefix.to_string(),
                        order,
                        members: Vec::new(),
                    },
                );
                pos
            }
        };
        &mut self.groups[pos]
    }
}

fn add_member(group: &mut Group, member: Member) {
    let pos = group.members.partition_point(|m| m.lemma < member.lemma);
    group.members.insert(pos, member);
}

/// Groups the X lemmas of head noun `y` by thesaurus category.
pub fn arrange(
    y: &str,
    store: &XnoYStore,
    t: &Thesaurus,
    attrs: &AttributeLexicon,
    categories: &CategoryTable,
) -> ArrangedFrame {
    let mut frame = ArrangedFrame {
        y_lemma: y.to_string(),
        groups: Vec::new(),
        rejected: Vec::new(),
    };
    for x in store.modifiers_of(y) {
        if frame.contains(x) || frame.rejected.iter().any(|r| r == x) {
            continue;
        }
        if attrs.excluded_modifier(x) {
            let pos = frame.rejected.partition_point(|r| r.as_str() < x);
            frame.rejected.insert(pos, x.to_string());
            continue;
        }
        let (order, prefix, label) = t
            .codes(x)
            .iter()
            .find_map(|c| categories.category(c))
            .unwrap_or((usize::MAX, "", UNKNOWN));
        let member = Member {
            lemma: x.to_string(),
            provenance: Provenance::Corpus,
        };
        add_member(frame.group_mut(label, prefix, order), member);
    }
    frame
}

/// Adds the members of `source` that `target` lacks, marked as merged from
/// `source`'s head noun. Existing target members are left untouched.
pub fn merge_similar(target: &ArrangedFrame, source: &ArrangedFrame) -> ArrangedFrame {
    let mut out = target.clone();
    for group in &source.groups {
        for m in &group.members {
            if out.contains(&m.lemma) {
                continue;
            }
            let member = Member {
                lemma: m.lemma.clone(),
                provenance: Provenance::MergedFrom(source.y_lemma.clone()),
            };
            add_member(
                out.group_mut(&group.label, &group.prefix, group.order),
                member,
            );
        }
    }
    out
}

impl fmt::Display for ArrangedFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Y {}", self.y_lemma)?;
        for g in &self.groups {
            let members: Vec<String> = g
                .members
                .iter()
                .map(|m| match &m.provenance {
                    Provenance::Corpus => m.lemma.clone(),
                    Provenance::MergedFrom(y) => format!("{} [from {y}]", m.lemma),
                })
                .collect();
            writeln!(f, "group {}: {}", g.label, members.join(", "))?;
        }
        write!(f, "rejected:")?;
        if !self.rejected.is_empty() {
            write!(f, " {}", self.rejected.join(", "))?;
        }
        let flagged = self.flagged();
        if !flagged.is_empty() {
            write!(f, "\n% flagged: {}", flagged.join(", "))?;
        }
        Ok(())
    }
}

/// Builds frames for every head noun of `store`, then applies `merges`
/// as `(target, source)` pairs in order.
pub fn build_dictionary(
    store: &XnoYStore,
    t: &Thesaurus,
    attrs: &AttributeLexicon,
    categories: &CategoryTable,
    merges: &[(String, String)],
) -> Result<Vec<ArrangedFrame>> {
    let mut frames: Vec<ArrangedFrame> = store
        .heads()
        .into_iter()
        .map(|y| arrange(y, store, t, attrs, categories))
        .collect();
    for (target, source) in merges {
        let find = |y: &str| {
            frames
                .iter()
                .position(|f| f.y_lemma == y)
                .ok_or_else(|| Error::Contract(format!("no \"X no Y\" examples for `{y}`")))
        };
        let (ti, si) = (find(target)?, find(source)?);
        frames[ti] = merge_similar(&frames[ti], &frames[si]);
    }
    Ok(frames)
}
