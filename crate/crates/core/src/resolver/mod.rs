//! Antecedent proposals and maximum-total-score selection.
//!
//! Each rule inspects the anaphor and proposes `(candidate, points)` pairs.
//! Points for one candidate are summed across rules and the candidate with
//! the highest total is the antecedent. Topic/focus candidates score
//! `W - D + P + S`, subjects of the anaphor's clause chain score
//! `base + P + S`.

mod config;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

pub use config::{Definiteness, DefinitenessTable, ResolverConfig};

use crate::corpus::{Case, Discourse, NounSubtype, Particle, Phrase, PhraseId, RefProperty};
use crate::error::{Error, Result};
use crate::lexicon::{
    code_level, satisfies_constraint, xnoy_modifier_set, AttrFlag, CaseSlot, LexiconSet,
};
use crate::salience::{distance, salience_list};

/// A possible antecedent: an earlier phrase or one of the "no antecedent" pseudo-candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Candidate {
    Indefinite,
    Generic,
    Phrase(PhraseId),
}

impl Candidate {
    pub fn phrase_id(self) -> Option<PhraseId> {
        match self {
            Candidate::Phrase(id) => Some(id),
            _ => None,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Candidate::Phrase(_))
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Indefinite => f.write_str("INDEFINITE"),
            Candidate::Generic => f.write_str("GENERIC"),
            Candidate::Phrase(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Score components of an R4/R5 proposal.
///
/// Topic/focus proposals carry `weight` and `distance`; subject proposals carry `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Breakdown {
    pub weight: Option<i64>,
    pub distance: Option<i64>,
    pub base: Option<i64>,
    pub p: i64,
    pub s: i64,
}

impl Breakdown {
    pub fn points(&self) -> i64 {
        match self.base {
            Some(base) => base + self.p + self.s,
            None => self.weight.unwrap_or(0) - self.distance.unwrap_or(0) + self.p + self.s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Proposal {
    pub candidate: Candidate,
    pub points: i64,
    pub rule: Rule,
    pub breakdown: Option<Breakdown>,
}

impl Proposal {
    fn flat(candidate: Candidate, points: i64, rule: Rule) -> Self {
        Proposal {
            candidate,
            points,
            rule,
            breakdown: None,
        }
    }

    fn scored(candidate: Candidate, rule: Rule, breakdown: Breakdown) -> Self {
        Proposal {
            candidate,
            points: breakdown.points(),
            rule,
            breakdown: Some(breakdown),
        }
    }
}

/// How a noun phrase is analysed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// Verbal noun with a case frame; one target per slot.
    Verbal(Vec<Case>),
    /// ichibu / tonari / betsu style nouns.
    Relational,
    /// Ordinary noun with usable "X no Y" evidence.
    Nominal,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub anaphor: PhraseId,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionResult {
    pub anaphor_id: PhraseId,
    /// Case slot for verbal nouns, `None` otherwise.
    pub slot: Option<Case>,
    pub property: Definiteness,
    pub p: i64,
    pub proposals: Vec<Proposal>,
    pub all_scores: BTreeMap<Candidate, i64>,
    /// `None` only when no rule proposed anything.
    pub winner: Option<Candidate>,
    pub total: i64,
    /// The winner was proposed by R1 (direct anaphora).
    pub direct: bool,
}

impl ResolutionResult {
    pub fn is_verbal(&self) -> bool {
        self.slot.is_some()
    }

    /// Winning phrase, or `None` when a pseudo-candidate (or nothing) won.
    pub fn antecedent(&self) -> Option<PhraseId> {
        self.winner.and_then(Candidate::phrase_id)
    }
}

const DEMONSTRATIVES: [&str; 4] = ["kono", "sono", "ano", "kouiu"];

fn is_candidate_phrase(p: &Phrase) -> bool {
    p.is_nominal() && !p.is_zero_pronoun()
}

fn demonstrative_modified(p: &Phrase, d: &Discourse) -> bool {
    let leading = p
        .surface
        .split_whitespace()
        .next()
        .is_some_and(|w| DEMONSTRATIVES.contains(&w));
    leading
        || d.phrases()
            .any(|q| q.head_id == Some(p.id) && DEMONSTRATIVES.contains(&q.lemma.as_str()))
}

/// Annotated referential property, or the surface default for `auto`:
/// demonstrative-modified or already-mentioned nouns are definite.
pub fn referential_property(
    p: &Phrase,
    d: &Discourse,
    table: &DefinitenessTable,
) -> (Definiteness, i64) {
    let property = match p.ref_property {
        RefProperty::Definite => Definiteness::Definite,
        RefProperty::Indefinite => Definiteness::Indefinite,
        RefProperty::Generic => Definiteness::Generic,
        RefProperty::Auto => {
            let mentioned = !p.lemma.is_empty()
                && d.preceding(p.id)
                    .any(|q| is_candidate_phrase(q) && q.lemma == p.lemma);
            if mentioned || demonstrative_modified(p, d) {
                Definiteness::Definite
            } else {
                Definiteness::Indefinite
            }
        }
    };
    (property, table.score(property))
}

/// Case the phrase fills for its governing predicate.
fn surface_case(p: &Phrase) -> Option<Case> {
    p.particles
        .iter()
        .find_map(|x| x.case())
        .or_else(|| p.is_subject().then_some(Case::Ga))
}

/// Head noun X when the phrase is "anaphor no X".
fn no_modified<'d>(p: &Phrase, d: &'d Discourse) -> Option<&'d Phrase> {
    if !p.has_particle(Particle::No) {
        return None;
    }
    p.head_id
        .and_then(|h| d.phrase(h))
        .filter(|h| is_candidate_phrase(h))
}

/// Subjects of the anaphor's clause and of every clause governing it,
/// restricted to phrases before the anaphor.
fn clause_subjects<'d>(d: &'d Discourse, anaphor: &Phrase) -> Vec<&'d Phrase> {
    let Some(sentence) = d.sentence_of(anaphor.id).and_then(|i| d.sentences.get(i)) else {
        return Vec::new();
    };
    let mut chain = HashSet::new();
    let mut head = anaphor.head_id;
    while let Some(h) = head {
        if !chain.insert(h) {
            break;
        }
        head = sentence
            .phrases
            .iter()
            .find(|p| p.id == h)
            .and_then(|p| p.head_id);
    }
    sentence
        .phrases
        .iter()
        .filter(|p| p.id < anaphor.id)
        .filter(|p| is_candidate_phrase(p) && p.is_subject())
        .filter(|p| p.head_id.is_some_and(|h| chain.contains(&h)))
        .collect()
}

/// Rule engine bound to one lexicon set and configuration.
#[derive(Debug, Clone, Copy)]
pub struct Resolver<'a> {
    pub lex: &'a LexiconSet,
    pub config: &'a ResolverConfig,
}

impl<'a> Resolver<'a> {
    pub fn new(lex: &'a LexiconSet, config: &'a ResolverConfig) -> Self {
        Resolver { lex, config }
    }

    pub fn mode(&self, p: &Phrase) -> Mode {
        match p.noun_subtype {
            None | Some(NounSubtype::Pronoun | NounSubtype::ZeroPronoun) => return Mode::Skip,
            _ => {}
        }
        let attrs = &self.lex.attrs;
        if attrs.has(&p.lemma, AttrFlag::NonAnaphoric) {
            return Mode::Skip;
        }
        if p.noun_subtype == Some(NounSubtype::Verbal) {
            if let Some(frame) = self.lex.case_frames.lookup(&p.lemma) {
                return Mode::Verbal(frame.slots.iter().map(|s| s.surface_case).collect());
            }
        }
        if p.noun_subtype == Some(NounSubtype::Relational)
            || attrs.has(&p.lemma, AttrFlag::Relational)
        {
            return Mode::Relational;
        }
        if !xnoy_modifier_set(&p.lemma, &self.lex.xnoy, attrs).is_empty() {
            return Mode::Nominal;
        }
        Mode::Skip
    }

    /// Mode for every nominal phrase of the discourse, in document order.
    pub fn detect_targets(&self, d: &Discourse) -> Vec<Target> {
        d.phrases()
            .filter(|p| p.is_nominal())
            .map(|p| Target {
                anaphor: p.id,
                mode: self.mode(p),
            })
            .collect()
    }

    /// R1: a definite noun whose lemma already appeared.
    pub fn rule_r1(&self, anaphor: &Phrase, d: &Discourse) -> Vec<Proposal> {
        let (property, _) = referential_property(anaphor, d, &self.config.definiteness);
        if property != Definiteness::Definite || anaphor.lemma.is_empty() {
            return Vec::new();
        }
        d.preceding(anaphor.id)
            .filter(|q| is_candidate_phrase(q) && q.lemma == anaphor.lemma)
            .map(|q| Proposal::flat(Candidate::Phrase(q.id), self.config.r1_points, Rule::R1))
            .collect()
    }

    /// R2 (generic) and R3 (indefinite) pseudo-candidates.
    pub fn rule_r2_r3(&self, anaphor: &Phrase, d: &Discourse) -> Vec<Proposal> {
        match referential_property(anaphor, d, &self.config.definiteness).0 {
            Definiteness::Generic => vec![Proposal::flat(
                Candidate::Generic,
                self.config.r2_points,
                Rule::R2,
            )],
            Definiteness::Indefinite => vec![Proposal::flat(
                Candidate::Indefinite,
                self.config.r3_points,
                Rule::R3,
            )],
            Definiteness::Definite => Vec::new(),
        }
    }

    /// Topic/focus and subject proposals shared by R4 and R5. `score`
    /// returns S, or `None` to drop the candidate.
    fn weighted_proposals(
        &self,
        anaphor: &Phrase,
        d: &Discourse,
        rule: Rule,
        score: impl Fn(&Phrase) -> Result<Option<i64>>,
    ) -> Result<Vec<Proposal>> {
        let (_, p) = referential_property(anaphor, d, &self.config.definiteness);
        let subjects = clause_subjects(d, anaphor);
        let subject_ids: HashSet<PhraseId> = subjects.iter().map(|s| s.id).collect();
        let list = salience_list(d, anaphor.id, &self.config.weights)?;

        let mut out = Vec::new();
        for entry in &list {
            if subject_ids.contains(&entry.phrase_id) {
                continue;
            }
            let cand = d
                .phrase(entry.phrase_id)
                .ok_or_else(|| Error::Contract(format!("missing phrase {}", entry.phrase_id)))?;
            if !is_candidate_phrase(cand) {
                continue;
            }
            if let Some(s) = score(cand)? {
                let breakdown = Breakdown {
                    weight: Some(entry.weight),
                    distance: Some(distance(entry, &list)?),
                    base: None,
                    p,
                    s,
                };
                out.push(Proposal::scored(
                    Candidate::Phrase(cand.id),
                    rule,
                    breakdown,
                ));
            }
        }
        for subject in subjects {
            if let Some(s) = score(subject)? {
                let breakdown = Breakdown {
                    weight: None,
                    distance: None,
                    base: Some(self.config.subject_base),
                    p,
                    s,
                };
                out.push(Proposal::scored(
                    Candidate::Phrase(subject.id),
                    rule,
                    breakdown,
                ));
            }
        }
        Ok(out)
    }

    /// S for a candidate of a non-verbal anaphor: similarity to the filtered X set.
    pub fn xnoy_similarity(&self, anaphor: &Phrase, cand: &Phrase) -> Result<i64> {
        if !self.config.semantics {
            return Ok(0);
        }
        let xs = xnoy_modifier_set(&anaphor.lemma, &self.lex.xnoy, &self.lex.attrs);
        let t = &self.lex.thesaurus;
        let codes = t.phrase_codes(cand);
        let level = xs
            .iter()
            .map(|x| code_level(codes, t.codes(x)))
            .max()
            .unwrap_or(0);
        self.config.similarity.score(level)
    }

    /// R4: non-verbal noun scored against "X no Y" evidence.
    pub fn rule_r4(&self, anaphor: &Phrase, d: &Discourse) -> Result<Vec<Proposal>> {
        self.weighted_proposals(anaphor, d, Rule::R4, |cand| {
            self.xnoy_similarity(anaphor, cand).map(Some)
        })
    }

    /// R5: candidates must satisfy the case slot; S comes from the slot match.
    pub fn rule_r5(
        &self,
        anaphor: &Phrase,
        slot: &CaseSlot,
        d: &Discourse,
    ) -> Result<Vec<Proposal>> {
        self.weighted_proposals(anaphor, d, Rule::R5, |cand| {
            if !self.config.semantics {
                return Ok(Some(0));
            }
            let m = satisfies_constraint(cand, slot, &self.lex.thesaurus, &self.config.similarity)?;
            Ok(m.satisfied.then_some(m.score))
        })
    }

    /// R6: a relational noun modifying X via `no` proposes earlier phrases with X's lemma.
    pub fn rule_r6(&self, anaphor: &Phrase, d: &Discourse) -> Vec<Proposal> {
        let Some(x) = no_modified(anaphor, d) else {
            return Vec::new();
        };
        d.preceding(anaphor.id)
            .filter(|q| is_candidate_phrase(q) && q.lemma == x.lemma)
            .map(|q| Proposal::flat(Candidate::Phrase(q.id), self.config.r6_points, Rule::R6))
            .collect()
    }

    /// Case slot of the verb governing a relational noun, if that verb has a frame.
    fn governing_slot(&self, anaphor: &Phrase, d: &Discourse) -> Option<&'a CaseSlot> {
        let head = anaphor.head_id.and_then(|h| d.phrase(h))?;
        let frame = self.lex.case_frames.lookup(&head.lemma)?;
        frame.slot(surface_case(anaphor)?)
    }

    /// Resolves one anaphor (one slot for verbal nouns).
    pub fn resolve(
        &self,
        anaphor_id: PhraseId,
        slot: Option<Case>,
        d: &Discourse,
    ) -> Result<ResolutionResult> {
        let anaphor = d.phrase(anaphor_id).ok_or_else(|| {
            Error::Contract(format!("anaphor {anaphor_id} is not in `{}`", d.doc_id))
        })?;
        let (property, p) = referential_property(anaphor, d, &self.config.definiteness);

        let mut proposals = self.rule_r1(anaphor, d);
        proposals.extend(self.rule_r2_r3(anaphor, d));

        match (self.mode(anaphor), slot) {
            (Mode::Verbal(slots), Some(case)) if slots.contains(&case) => {
                let frame_slot = self
                    .lex
                    .case_frames
                    .lookup(&anaphor.lemma)
                    .and_then(|f| f.slot(case))
                    .ok_or_else(|| Error::Contract(format!("no {case}-slot for {anaphor_id}")))?;
                proposals.extend(self.rule_r5(anaphor, frame_slot, d)?);
            }
            (Mode::Relational, None) => {
                if no_modified(anaphor, d).is_some() {
                    proposals.extend(self.rule_r6(anaphor, d));
                } else if let Some(verb_slot) = self.governing_slot(anaphor, d) {
                    proposals.extend(self.rule_r5(anaphor, verb_slot, d)?);
                }
            }
            (Mode::Nominal, None) => proposals.extend(self.rule_r4(anaphor, d)?),
            (mode, slot) => {
                return Err(Error::Contract(format!(
                    "phrase {anaphor_id} (mode {mode:?}) cannot be resolved for slot {slot:?}"
                )))
            }
        }

        let mut all_scores: BTreeMap<Candidate, i64> = BTreeMap::new();
        for prop in &proposals {
            *all_scores.entry(prop.candidate).or_insert(0) += prop.points;
        }
        // Ties go to real candidates, then to the most recent phrase.
        let winner = all_scores
            .iter()
            .max_by_key(|(c, total)| (**total, c.is_real(), c.phrase_id()))
            .map(|(c, _)| *c);
        let total = winner.map_or(0, |w| all_scores[&w]);
        let direct = winner.is_some_and(|w| {
            proposals
                .iter()
                .any(|p| p.candidate == w && p.rule == Rule::R1)
        });

        Ok(ResolutionResult {
            anaphor_id,
            slot,
            property,
            p,
            proposals,
            all_scores,
            winner,
            total,
            direct,
        })
    }

    /// Resolves every detected target of the discourse, verbal nouns once per slot.
    pub fn resolve_document(&self, d: &Discourse) -> Result<Vec<ResolutionResult>> {
        let mut out = Vec::new();
        for target in self.detect_targets(d) {
            match target.mode {
                Mode::Skip => {}
                Mode::Verbal(slots) => {
                    for case in slots {
                        out.push(self.resolve(target.anaphor, Some(case), d)?);
                    }
                }
                Mode::Relational | Mode::Nominal => {
                    out.push(self.resolve(target.anaphor, None, d)?)
                }
            }
        }
        Ok(out)
    }
}
