//! Topic/focus classification and the distance measure over salience entries.
//!
//! Phrases are classified by the particle (or trailing punctuation) they
//! carry. Topic rows are tried before focus rows and the first matching row
//! wins; focus rows never apply to a phrase marked with `wa`/`niwa`.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{Discourse, NounSubtype, Particle, Phrase, PhraseId, Punct};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SalienceKind {
    Topic,
    Focus,
}

impl fmt::Display for SalienceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SalienceKind::Topic => "topic",
            SalienceKind::Focus => "focus",
        })
    }
}

/// Which phrases a row applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSubject {
    /// Overt and zero pronouns.
    Pronoun,
    /// Any other nominal phrase.
    Noun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Particle(Particle),
    Punct(Punct),
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marker::Particle(p) => write!(f, "{p}"),
            Marker::Punct(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalienceRow {
    pub kind: SalienceKind,
    pub subject: RowSubject,
    pub markers: Vec<Marker>,
    pub weight: i64,
}

impl SalienceRow {
    fn matches(&self, p: &Phrase) -> bool {
        let subject = match p.noun_subtype {
            None => return false,
            Some(NounSubtype::Pronoun | NounSubtype::ZeroPronoun) => RowSubject::Pronoun,
            Some(_) => RowSubject::Noun,
        };
        subject == self.subject
            && self.markers.iter().any(|m| match m {
                Marker::Particle(x) => p.has_particle(*x),
                Marker::Punct(x) => p.punct_after == Some(*x),
            })
    }

    /// Pattern text, e.g. `noun:wo,ni,comma,period`.
    pub fn pattern(&self) -> String {
        let subject = match self.subject {
            RowSubject::Pronoun => "pronoun",
            RowSubject::Noun => "noun",
        };
        let markers: Vec<String> = self.markers.iter().map(|m| m.to_string()).collect();
        format!("{subject}:{}", markers.join(","))
    }
}

impl FromStr for SalienceRow {
    type Err = Error;

    /// Parses `topic|focus<TAB>pattern<TAB>weight`.
    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [kind, pattern, weight] = fields[..] else {
            return Err(Error::Config(format!(
                "weight row `{line}` needs three tab-separated fields"
            )));
        };
        let kind = match kind {
            "topic" => SalienceKind::Topic,
            "focus" => SalienceKind::Focus,
            other => return Err(Error::Config(format!("unknown salience kind `{other}`"))),
        };
        let (subject, markers) = pattern
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("row pattern `{pattern}` lacks `:`")))?;
        let subject = match subject {
            "pronoun" => RowSubject::Pronoun,
            "noun" => RowSubject::Noun,
            other => return Err(Error::Config(format!("unknown row subject `{other}`"))),
        };
        let markers = markers
            .split(',')
            .map(|m| {
                m.parse::<Particle>()
                    .map(Marker::Particle)
                    .or_else(|_| m.parse::<Punct>().map(Marker::Punct))
                    .map_err(|_| Error::Config(format!("unknown row marker `{m}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let weight = weight
            .parse()
            .map_err(|_| Error::Config(format!("bad weight `{weight}`")))?;
        Ok(SalienceRow {
            kind,
            subject,
            markers,
            weight,
        })
    }
}

/// Ordered topic and focus rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    rows: Vec<SalienceRow>,
}

impl Default for WeightTable {
    fn default() -> Self {
        use Marker::{Particle as P, Punct as X};
        use Particle::*;
        let row = |kind, subject, markers: &[Marker], weight| SalienceRow {
            kind,
            subject,
            markers: markers.to_vec(),
            weight,
        };
        WeightTable::new(vec![
            row(
                SalienceKind::Topic,
                RowSubject::Pronoun,
                &[P(Ga), P(Wa)],
                21,
            ),
            row(SalienceKind::Topic, RowSubject::Noun, &[P(Wa), P(Niwa)], 20),
            row(
                SalienceKind::Focus,
                RowSubject::Pronoun,
                &[P(Wo), P(Ni), P(Kara)],
                16,
            ),
            row(
                SalienceKind::Focus,
                RowSubject::Noun,
                &[P(Ga), P(Mo), P(Da), P(Nara), P(Koso)],
                15,
            ),
            row(
                SalienceKind::Focus,
                RowSubject::Noun,
                &[P(Wo), P(Ni), X(Punct::Comma), X(Punct::Period)],
                14,
            ),
            row(
                SalienceKind::Focus,
                RowSubject::Noun,
                &[P(He), P(De), P(Kara), P(Yori)],
                13,
            ),
        ])
    }
}

impl WeightTable {
    /// Topic rows are moved ahead of focus rows; relative order is kept.
    pub fn new(mut rows: Vec<SalienceRow>) -> Self {
        rows.sort_by_key(|r| r.kind);
        WeightTable { rows }
    }

    /// Parses a weight-override file; its rows replace the whole table.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.trim_end_matches('\r'))
            .filter(|l| !l.trim().is_empty() && !l.starts_with('%'))
            .map(str::parse)
            .collect::<Result<Vec<SalienceRow>>>()?;
        if rows.is_empty() {
            return Err(Error::Config("weight file defines no rows".into()));
        }
        Ok(WeightTable::new(rows))
    }

    pub fn rows(&self) -> &[SalienceRow] {
        &self.rows
    }

    /// Kind and weight of the first matching row.
    pub fn classify(&self, p: &Phrase) -> Option<(SalienceKind, i64)> {
        let has_wa = p.has_particle(Particle::Wa) || p.has_particle(Particle::Niwa);
        self.rows
            .iter()
            .filter(|r| !(has_wa && r.kind == SalienceKind::Focus))
            .find(|r| r.matches(p))
            .map(|r| (r.kind, r.weight))
    }
}

pub fn classify_salience(p: &Phrase, table: &WeightTable) -> Option<(SalienceKind, i64)> {
    table.classify(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SalienceEntry {
    pub phrase_id: PhraseId,
    pub kind: SalienceKind,
    pub weight: i64,
    /// Position among the salience entries of the document.
    pub seq: usize,
}

/// Salience entries strictly preceding `anaphor`, in document order.
pub fn salience_list(
    d: &Discourse,
    anaphor: PhraseId,
    table: &WeightTable,
) -> Result<Vec<SalienceEntry>> {
    if d.phrase(anaphor).is_none() {
        return Err(Error::Contract(format!(
            "anaphor {anaphor} is not a phrase of `{}`",
            d.doc_id
        )));
    }
    Ok(d.preceding(anaphor)
        .filter_map(|p| table.classify(p).map(|(kind, weight)| (p.id, kind, weight)))
        .enumerate()
        .map(|(seq, (phrase_id, kind, weight))| SalienceEntry {
            phrase_id,
            kind,
            weight,
            seq,
        })
        .collect())
}

/// Backward rank of `entry` among same-kind entries of `list` (1 = most recent).
pub fn distance(entry: &SalienceEntry, list: &[SalienceEntry]) -> Result<i64> {
    let pos = list
        .iter()
        .position(|e| e.phrase_id == entry.phrase_id)
        .ok_or_else(|| {
            Error::Contract(format!(
                "phrase {} is not in the salience list",
                entry.phrase_id
            ))
        })?;
    let later = list[pos + 1..]
        .iter()
        .filter(|e| e.kind == entry.kind)
        .count();
    Ok(1 + later as i64)
}
