//! Recall/precision against gold bridging annotations.
//!
//! Recall is `correct / gold_positive`, precision `correct / system_positive`.
//! Verbal nouns are counted once per case slot; a gold link belongs to a
//! slot when its relation label names that case.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::corpus::{Case, Discourse, GoldAntecedent, NounSubtype, PhraseId};
use crate::error::{Error, Result};
use crate::resolver::ResolutionResult;

/// One system decision, as stored in a prediction file:
/// `doc<TAB>anaphor_id<TAB>slot<TAB>winner_id_or_NONE<TAB>total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub doc: String,
    pub anaphor: PhraseId,
    pub slot: Option<Case>,
    pub winner: Option<PhraseId>,
    pub total: i64,
}

impl Prediction {
    pub fn from_result(doc: &str, r: &ResolutionResult) -> Self {
        Prediction {
            doc: doc.to_string(),
            anaphor: r.anaphor_id,
            slot: r.slot,
            winner: r.antecedent(),
            total: r.total,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.doc,
            self.anaphor,
            self.slot.map_or("NONE".to_string(), |c| c.to_string()),
            self.winner.map_or("NONE".to_string(), |w| w.to_string()),
            self.total
        )
    }
}

pub fn parse_predictions(text: &str) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('%') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 5 {
            return Err(Error::parse(
                line_no,
                "prediction",
                "expected 5 tab-separated fields",
            ));
        }
        let id = |text: &str, field| {
            text.parse::<u32>()
                .map(PhraseId)
                .map_err(|_| Error::parse(line_no, field, format!("`{text}`")))
        };
        out.push(Prediction {
            doc: f[0].to_string(),
            anaphor: id(f[1], "anaphor_id")?,
            slot: match f[2] {
                "NONE" => None,
                c => Some(c.parse().map_err(|e| Error::parse(line_no, "slot", e))?),
            },
            winner: match f[3] {
                "NONE" => None,
                w => Some(id(w, "winner")?),
            },
            total: f[4]
                .parse()
                .map_err(|_| Error::parse(line_no, "total", format!("`{}`", f[4])))?,
        });
    }
    Ok(out)
}

/// Integer percentage rounded half-up; `None` when the denominator is 0.
pub fn percent(num: usize, den: usize) -> Option<usize> {
    (den > 0).then(|| (200 * num + den) / (2 * den))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub gold_positive: usize,
    pub system_positive: usize,
    pub correct: usize,
}

impl Counts {
    pub fn new(correct: usize, gold_positive: usize, system_positive: usize) -> Self {
        Counts {
            gold_positive,
            system_positive,
            correct,
        }
    }

    pub fn recall(&self) -> Option<f64> {
        (self.gold_positive > 0).then(|| self.correct as f64 / self.gold_positive as f64)
    }

    pub fn precision(&self) -> Option<f64> {
        (self.system_positive > 0).then(|| self.correct as f64 / self.system_positive as f64)
    }

    pub fn recall_percent(&self) -> Option<usize> {
        percent(self.correct, self.gold_positive)
    }

    pub fn precision_percent(&self) -> Option<usize> {
        percent(self.correct, self.system_positive)
    }

    fn rate(pct: Option<usize>, num: usize, den: usize) -> String {
        match pct {
            Some(p) => format!("{p}% ({num}/{den})"),
            None => format!("- ({num}/{den})"),
        }
    }

    pub fn render_recall(&self) -> String {
        Self::rate(self.recall_percent(), self.correct, self.gold_positive)
    }

    pub fn render_precision(&self) -> String {
        Self::rate(self.precision_percent(), self.correct, self.system_positive)
    }
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            gold_positive: self.gold_positive + o.gold_positive,
            system_positive: self.system_positive + o.system_positive,
            correct: self.correct + o.correct,
        }
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        *self = *self + o;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalReport {
    pub non_verbal: Counts,
    pub verbal: Counts,
}

impl EvalReport {
    pub fn total(&self) -> Counts {
        self.non_verbal + self.verbal
    }

    pub fn merge(self, other: EvalReport) -> EvalReport {
        EvalReport {
            non_verbal: self.non_verbal + other.non_verbal,
            verbal: self.verbal + other.verbal,
        }
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class\trecall\tprecision")?;
        for (name, c) in [
            ("non-verbal", self.non_verbal),
            ("verbal", self.verbal),
            ("total", self.total()),
        ] {
            writeln!(f, "{name}\t{}\t{}", c.render_recall(), c.render_precision())?;
        }
        write!(f, "% verbal nouns are counted once per case slot")
    }
}

/// Evaluation unit: an anaphor, plus the case label for verbal-noun slots.
type Unit = (String, PhraseId, Option<String>);

/// Scores predictions against the gold links of `corpus`.
///
/// Every predicted anaphor must carry a gold record (possibly `rel=NONE`).
/// Gold links on phrases the system never predicted count as misses.
pub fn evaluate(predictions: &[Prediction], corpus: &[Discourse]) -> Result<EvalReport> {
    let docs: HashMap<&str, &Discourse> = corpus.iter().map(|d| (d.doc_id.as_str(), d)).collect();

    let mut predicted_slots: HashMap<(String, PhraseId), bool> = HashMap::new();
    let mut seen = BTreeSet::new();
    for p in predictions {
        let d = docs
            .get(p.doc.as_str())
            .ok_or_else(|| Error::Eval(format!("unknown document `{}`", p.doc)))?;
        let phrase = d
            .phrase(p.anaphor)
            .ok_or_else(|| Error::Eval(format!("{}:{} is not a phrase", p.doc, p.anaphor)))?;
        if phrase.gold_antecedents.is_empty() {
            return Err(Error::Eval(format!(
                "no gold record for anaphor {}:{}",
                p.doc, p.anaphor
            )));
        }
        if !seen.insert((p.doc.clone(), p.anaphor, p.slot)) {
            return Err(Error::Eval(format!(
                "duplicate prediction for {}:{} slot {:?}",
                p.doc, p.anaphor, p.slot
            )));
        }
        *predicted_slots
            .entry((p.doc.clone(), p.anaphor))
            .or_insert(false) |= p.slot.is_some();
    }

    // gold units with their antecedent ids and class (true = verbal)
    let mut gold: BTreeMap<Unit, (BTreeSet<PhraseId>, bool)> = BTreeMap::new();
    for d in corpus {
        for phrase in d.phrases() {
            let links: Vec<(&str, PhraseId)> = phrase
                .gold_antecedents
                .iter()
                .filter_map(|g| match g {
                    GoldAntecedent::Antecedent { label, id } => Some((label.as_str(), *id)),
                    GoldAntecedent::None => None,
                })
                .collect();
            if links.is_empty() {
                continue;
            }
            let verbal = match predicted_slots.get(&(d.doc_id.clone(), phrase.id)) {
                Some(has_slot) => *has_slot,
                None => phrase.noun_subtype == Some(NounSubtype::Verbal),
            };
            for (label, id) in links {
                let key = (
                    d.doc_id.clone(),
                    phrase.id,
                    verbal.then(|| label.to_string()),
                );
                gold.entry(key)
                    .or_insert_with(|| (BTreeSet::new(), verbal))
                    .0
                    .insert(id);
            }
        }
    }

    let mut report = EvalReport::default();
    for ((_, _, _), (_, verbal)) in &gold {
        bucket(&mut report, *verbal).gold_positive += 1;
    }
    for p in predictions {
        let verbal = p.slot.is_some();
        let Some(winner) = p.winner else { continue };
        let counts = bucket(&mut report, verbal);
        counts.system_positive += 1;
        let key = (p.doc.clone(), p.anaphor, p.slot.map(|c| c.to_string()));
        if gold.get(&key).is_some_and(|(ids, _)| ids.contains(&winner)) {
            counts.correct += 1;
        }
    }
    Ok(report)
}

fn bucket(report: &mut EvalReport, verbal: bool) -> &mut Counts {
    if verbal {
        &mut report.verbal
    } else {
        &mut report.non_verbal
    }
}
