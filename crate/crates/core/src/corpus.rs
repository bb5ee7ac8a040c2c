//! Annotated discourse model and the line-oriented ADC corpus format.
//!
//! A corpus file holds one or more documents. Each document is a list of
//! sentences, each sentence a list of pre-segmented phrases carrying
//! dependency links, particles, clause roles and gold bridging links:
//!
//! ```text
//! % comment
//! #DOC rate
//! #SENT 0
//! 1	kono dorudaka	dorudaka	noun	common	wa	3	other	-	auto	-
//! ```
//!
//! Phrase records are tab-separated:
//! `id surface lemma pos subtype particles head clause_role sem_codes refprop gold [punct]`.
//! The trailing `punct` column (`comma`, `period` or `-`) is optional.
#![allow(clippy::tabs_in_doc_comments)]

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Document-unique phrase identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhraseId(pub u32);

impl fmt::Display for PhraseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! token_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(format!("unknown {} `{}`", stringify!($name), other)),
                }
            }
        }
    };
}

token_enum! {
    /// Postpositional particles and the copula forms the weight tables key on.
    Particle {
        Wa => "wa",
        Ga => "ga",
        Wo => "wo",
        Ni => "ni",
        Niwa => "niwa",
        Mo => "mo",
        Da => "da",
        Nara => "nara",
        Koso => "koso",
        He => "he",
        De => "de",
        Kara => "kara",
        Yori => "yori",
        No => "no",
    }
}

token_enum! {
    /// Surface cases used by verb case frames.
    Case {
        Ga => "ga",
        Wo => "wo",
        Ni => "ni",
        De => "de",
        Kara => "kara",
        He => "he",
    }
}

impl Particle {
    /// The surface case this particle marks directly, if any.
    pub fn case(self) -> Option<Case> {
        match self {
            Particle::Ga => Some(Case::Ga),
            Particle::Wo => Some(Case::Wo),
            Particle::Ni => Some(Case::Ni),
            Particle::De => Some(Case::De),
            Particle::Kara => Some(Case::Kara),
            Particle::He => Some(Case::He),
            _ => None,
        }
    }
}

token_enum! {
    NounSubtype {
        Common => "common",
        Verbal => "verbal",
        Adjectival => "adjectival",
        Numeral => "numeral",
        Temporal => "temporal",
        Relational => "relational",
        Pronoun => "pronoun",
        ZeroPronoun => "zero_pronoun",
    }
}

token_enum! {
    Punct {
        Comma => "comma",
        Period => "period",
    }
}

token_enum! {
    ClauseRole {
        SubjectMain => "subject_main",
        SubjectSubordinate => "subject_subordinate",
        Other => "other",
    }
}

token_enum! {
    /// Annotated referential property; `Auto` defers to the resolver heuristic.
    RefProperty {
        Definite => "definite",
        Indefinite => "indefinite",
        Generic => "generic",
        Auto => "auto",
    }
}

/// One gold bridging annotation on an anaphor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GoldAntecedent {
    /// `rel=<label>:<id>`
    Antecedent { label: String, id: PhraseId },
    /// `rel=NONE`: the phrase is annotated as having no indirect antecedent.
    None,
}

impl fmt::Display for GoldAntecedent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldAntecedent::Antecedent { label, id } => write!(f, "rel={label}:{id}"),
            GoldAntecedent::None => f.write_str("rel=NONE"),
        }
    }
}

/// A bunsetsu-like phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub id: PhraseId,
    /// Empty for zero pronouns.
    pub surface: String,
    pub lemma: String,
    pub pos: String,
    /// `None` for non-nominal phrases (verbs, adverbs, ...).
    pub noun_subtype: Option<NounSubtype>,
    pub particles: Vec<Particle>,
    pub punct_after: Option<Punct>,
    pub head_id: Option<PhraseId>,
    pub clause_role: ClauseRole,
    pub sem_codes: Vec<String>,
    pub ref_property: RefProperty,
    pub gold_antecedents: Vec<GoldAntecedent>,
}

impl Phrase {
    /// A minimal common-noun phrase; the remaining fields default to "absent".
    pub fn noun(id: u32, lemma: &str) -> Self {
        Phrase {
            id: PhraseId(id),
            surface: lemma.to_string(),
            lemma: lemma.to_string(),
            pos: "noun".to_string(),
            noun_subtype: Some(NounSubtype::Common),
            particles: Vec::new(),
            punct_after: None,
            head_id: None,
            clause_role: ClauseRole::Other,
            sem_codes: Vec::new(),
            ref_property: RefProperty::Auto,
            gold_antecedents: Vec::new(),
        }
    }

    pub fn is_nominal(&self) -> bool {
        self.noun_subtype.is_some()
    }

    pub fn is_zero_pronoun(&self) -> bool {
        self.noun_subtype == Some(NounSubtype::ZeroPronoun)
    }

    pub fn has_particle(&self, particle: Particle) -> bool {
        self.particles.contains(&particle)
    }

    pub fn is_subject(&self) -> bool {
        matches!(
            self.clause_role,
            ClauseRole::SubjectMain | ClauseRole::SubjectSubordinate
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub phrases: Vec<Phrase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discourse {
    pub doc_id: String,
    pub sentences: Vec<Sentence>,
}

impl Discourse {
    pub fn new(doc_id: impl Into<String>) -> Self {
        Discourse {
            doc_id: doc_id.into(),
            sentences: Vec::new(),
        }
    }

    /// All phrases in document order.
    pub fn phrases(&self) -> impl Iterator<Item = &Phrase> + '_ {
        self.sentences.iter().flat_map(|s| s.phrases.iter())
    }

    pub fn phrase_count(&self) -> usize {
        self.sentences.iter().map(|s| s.phrases.len()).sum()
    }

    pub fn phrase(&self, id: PhraseId) -> Option<&Phrase> {
        self.phrases().find(|p| p.id == id)
    }

    /// Index of the sentence containing `id`.
    pub fn sentence_of(&self, id: PhraseId) -> Option<usize> {
        self.sentences
            .iter()
            .find(|s| s.phrases.iter().any(|p| p.id == id))
            .map(|s| s.index)
    }

    /// Phrases strictly preceding `id` in document order.
    pub fn preceding(&self, id: PhraseId) -> impl Iterator<Item = &Phrase> + '_ {
        self.phrases().take_while(move |p| p.id != id)
    }

    /// Renders the discourse in ADC format.
    pub fn to_adc(&self) -> String {
        let mut out = format!("#DOC {}\n", self.doc_id);
        for sentence in &self.sentences {
            out.push_str(&format!("#SENT {}\n", sentence.index));
            for p in &sentence.phrases {
                out.push_str(&phrase_record(p));
                out.push('\n');
            }
        }
        out
    }
}

fn join_or_dash<T: fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn phrase_record(p: &Phrase) -> String {
    let surface = if p.surface.is_empty() {
        "*"
    } else {
        &p.surface
    };
    let dash = |s: &str| {
        if s.is_empty() {
            "-".to_string()
        } else {
            s.to_string()
        }
    };
    [
        p.id.to_string(),
        surface.to_string(),
        dash(&p.lemma),
        dash(&p.pos),
        p.noun_subtype.map_or("-".to_string(), |s| s.to_string()),
        join_or_dash(&p.particles),
        p.head_id.map_or("-".to_string(), |h| h.to_string()),
        p.clause_role.to_string(),
        join_or_dash(&p.sem_codes),
        p.ref_property.to_string(),
        join_or_dash(&p.gold_antecedents),
        p.punct_after.map_or("-".to_string(), |x| x.to_string()),
    ]
    .join("\t")
}

/// Parses a corpus holding exactly one document.
pub fn parse_discourse(input: &str) -> Result<Discourse> {
    let mut docs = parse_corpus(input)?;
    match docs.len() {
        1 => Ok(docs.remove(0)),
        0 => Err(Error::Structural("input contains no #DOC header".into())),
        n => Err(Error::Structural(format!(
            "expected one document, found {n}"
        ))),
    }
}

/// Parses every document in an ADC corpus and validates each one.
pub fn parse_corpus(input: &str) -> Result<Vec<Discourse>> {
    let mut docs: Vec<Discourse> = Vec::new();
    let mut seen_docs = HashSet::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#DOC") {
            let id = rest.trim();
            if id.is_empty() {
                return Err(Error::parse(line_no, "doc_id", "missing document id"));
            }
            if !seen_docs.insert(id.to_string()) {
                return Err(Error::parse(
                    line_no,
                    "doc_id",
                    format!("duplicate document `{id}`"),
                ));
            }
            docs.push(Discourse::new(id));
            continue;
        }
        let doc = docs
            .last_mut()
            .ok_or_else(|| Error::parse(line_no, "record", "content before the first #DOC"))?;
        if let Some(rest) = line.strip_prefix("#SENT") {
            let n: usize = rest.trim().parse().map_err(|_| {
                Error::parse(line_no, "sentence_index", format!("`{}`", rest.trim()))
            })?;
            if n != doc.sentences.len() {
                return Err(Error::parse(
                    line_no,
                    "sentence_index",
                    format!("expected {}, found {n}", doc.sentences.len()),
                ));
            }
            doc.sentences.push(Sentence {
                index: n,
                phrases: Vec::new(),
            });
            continue;
        }
        let sentence = doc
            .sentences
            .last_mut()
            .ok_or_else(|| Error::parse(line_no, "record", "phrase record before #SENT"))?;
        sentence.phrases.push(parse_phrase(line, line_no)?);
    }

    for doc in &docs {
        let violations = validate_discourse(doc);
        if let Some(first) = violations.first() {
            return Err(Error::Structural(format!(
                "document `{}`: {first}{}",
                doc.doc_id,
                if violations.len() > 1 {
                    format!(" (and {} more)", violations.len() - 1)
                } else {
                    String::new()
                }
            )));
        }
    }
    Ok(docs)
}

fn parse_list<T: FromStr<Err = String>>(
    text: &str,
    line: usize,
    field: &'static str,
) -> Result<Vec<T>> {
    if text == "-" || text == "none" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|e| Error::parse(line, field, e))
        })
        .collect()
}

fn parse_opt<T: FromStr<Err = String>>(
    text: &str,
    line: usize,
    field: &'static str,
) -> Result<Option<T>> {
    if text == "-" {
        Ok(None)
    } else {
        text.parse()
            .map(Some)
            .map_err(|e| Error::parse(line, field, e))
    }
}

fn parse_id(text: &str, line: usize, field: &'static str) -> Result<PhraseId> {
    text.parse::<u32>()
        .map(PhraseId)
        .map_err(|_| Error::parse(line, field, format!("`{text}` is not a phrase id")))
}

fn parse_gold(text: &str, line: usize) -> Result<Vec<GoldAntecedent>> {
    if text == "-" {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let body = item
                .trim()
                .strip_prefix("rel=")
                .ok_or_else(|| Error::parse(line, "gold", format!("`{item}` lacks `rel=`")))?;
            if body == "NONE" {
                return Ok(GoldAntecedent::None);
            }
            let (label, id) = body
                .rsplit_once(':')
                .ok_or_else(|| Error::parse(line, "gold", format!("`{item}` lacks `:<id>`")))?;
            if label.is_empty() {
                return Err(Error::parse(
                    line,
                    "gold",
                    format!("`{item}` has an empty label"),
                ));
            }
            Ok(GoldAntecedent::Antecedent {
                label: label.to_string(),
                id: parse_id(id, line, "gold")?,
            })
        })
        .collect()
}

fn parse_phrase(line: &str, line_no: usize) -> Result<Phrase> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 11 && fields.len() != 12 {
        return Err(Error::parse(
            line_no,
            "record",
            format!(
                "expected 11 or 12 tab-separated fields, found {}",
                fields.len()
            ),
        ));
    }
    let undash = |s: &str| {
        if s == "-" {
            String::new()
        } else {
            s.to_string()
        }
    };
    let surface = if fields[1] == "*" {
        String::new()
    } else {
        fields[1].to_string()
    };
    let punct_after = match fields.get(11) {
        Some(text) => parse_opt(text, line_no, "punct")?,
        None => None,
    };
    let clause_role = match fields[7] {
        "-" => ClauseRole::Other,
        text => text
            .parse()
            .map_err(|e| Error::parse(line_no, "clause_role", e))?,
    };
    let ref_property = match fields[9] {
        "-" => RefProperty::Auto,
        text => text
            .parse()
            .map_err(|e| Error::parse(line_no, "refprop", e))?,
    };
    Ok(Phrase {
        id: parse_id(fields[0], line_no, "id")?,
        surface,
        lemma: undash(fields[2]),
        pos: undash(fields[3]),
        noun_subtype: parse_opt(fields[4], line_no, "subtype")?,
        particles: parse_list(fields[5], line_no, "particles")?,
        punct_after,
        head_id: match fields[6] {
            "-" => None,
            text => Some(parse_id(text, line_no, "head")?),
        },
        clause_role,
        sem_codes: if fields[8] == "-" {
            Vec::new()
        } else {
            fields[8].split(',').map(|c| c.trim().to_string()).collect()
        },
        ref_property,
        gold_antecedents: parse_gold(fields[10], line_no)?,
    })
}

/// One broken invariant found by [`validate_discourse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub phrase: Option<PhraseId>,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phrase {
            Some(id) => write!(f, "phrase {id}: {}: {}", self.rule, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

const ZERO_PRONOUN_PARTICLES: [Particle; 5] = [
    Particle::Ga,
    Particle::Wa,
    Particle::Wo,
    Particle::Ni,
    Particle::Kara,
];

/// Checks every data-model invariant; an empty result means the discourse is well formed.
pub fn validate_discourse(d: &Discourse) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut v = |phrase: Option<PhraseId>, rule: &'static str, detail: String| {
        out.push(Violation {
            phrase,
            rule,
            detail,
        })
    };

    for (expected, s) in d.sentences.iter().enumerate() {
        if s.index != expected {
            v(
                None,
                "sentence-index",
                format!("sentence {} found at position {expected}", s.index),
            );
        }
    }

    // Document position of every id, for ordering checks.
    let mut position: HashMap<PhraseId, usize> = HashMap::new();
    let mut previous: Option<PhraseId> = None;
    for (pos, p) in d.phrases().enumerate() {
        if let Some(prev) = previous {
            if p.id <= prev {
                v(
                    Some(p.id),
                    "id-order",
                    format!("id not strictly greater than preceding id {prev}"),
                );
            }
        }
        if position.insert(p.id, pos).is_some() {
            v(Some(p.id), "id-unique", "duplicate phrase id".into());
        }
        previous = Some(p.id);
    }

    for s in &d.sentences {
        let ids: HashSet<PhraseId> = s.phrases.iter().map(|p| p.id).collect();
        let roots = s.phrases.iter().filter(|p| p.head_id.is_none()).count();
        if roots > 1 {
            v(
                None,
                "single-root",
                format!("sentence {} has {roots} head-less phrases", s.index),
            );
        }
        for p in &s.phrases {
            if let Some(head) = p.head_id {
                if head == p.id {
                    v(Some(p.id), "head", "phrase is its own head".into());
                } else if !ids.contains(&head) {
                    v(
                        Some(p.id),
                        "head",
                        format!("head {head} is not a phrase of sentence {}", s.index),
                    );
                }
            }
            if p.is_zero_pronoun() {
                if !p.surface.is_empty() {
                    v(
                        Some(p.id),
                        "zero-pronoun-surface",
                        format!("zero pronoun has surface `{}`", p.surface),
                    );
                }
                if !p
                    .particles
                    .iter()
                    .any(|x| ZERO_PRONOUN_PARTICLES.contains(x))
                {
                    v(
                        Some(p.id),
                        "zero-pronoun-particle",
                        "zero pronoun needs one of ga, wa, wo, ni, kara".into(),
                    );
                }
            }
            let own = position.get(&p.id).copied();
            for g in &p.gold_antecedents {
                if let GoldAntecedent::Antecedent { id, .. } = g {
                    match (position.get(id), own) {
                        (Some(&target), Some(own)) if target < own => {}
                        (Some(_), _) => v(
                            Some(p.id),
                            "gold-order",
                            format!("gold antecedent {id} does not precede the anaphor"),
                        ),
                        (None, _) => v(
                            Some(p.id),
                            "gold-dangling",
                            format!("gold antecedent {id} does not exist"),
                        ),
                    }
                }
            }
        }
    }
    out
}
