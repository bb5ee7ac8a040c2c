//! Verb case frames with per-slot semantic constraints and example fillers.
//!
//! File format (block-oriented, `%` comments):
//!
//! ```text
//! verb kaiseki-suru
//! slot case=ga constraints=11 examples=seito,kare
//! slot case=wo constraints=2,31 examples=atai,de-ta
//! vn kaiseki -> kaiseki-suru
//! ```

use std::collections::HashMap;

use crate::corpus::{Case, Phrase};
use crate::error::{Error, Result};
use crate::lexicon::thesaurus::{code_level, SimilarityScale, Thesaurus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSlot {
    pub surface_case: Case,
    /// Category codes; a candidate satisfies one when its code has it as a prefix.
    pub constraints: Vec<String>,
    pub example_nouns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbCaseFrame {
    pub verb_lemma: String,
    pub slots: Vec<CaseSlot>,
}

impl VerbCaseFrame {
    pub fn slot(&self, case: Case) -> Option<&CaseSlot> {
        self.slots.iter().find(|s| s.surface_case == case)
    }
}

#[derive(Debug, Clone, Default)]
pub struct CaseFrameDict {
    frames: HashMap<String, VerbCaseFrame>,
    verbal_nouns: HashMap<String, String>,
}

impl CaseFrameDict {
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut dict = CaseFrameDict::default();
        let mut current: Option<VerbCaseFrame> = None;

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "verb" => {
                    if rest.is_empty() {
                        return Err(Error::lexicon(name, line_no, "`verb` needs a lemma"));
                    }
                    if let Some(frame) = current.take() {
                        dict.add_frame(frame, name, line_no)?;
                    }
                    current = Some(VerbCaseFrame {
                        verb_lemma: rest.to_string(),
                        slots: Vec::new(),
                    });
                }
                "slot" => {
                    let frame = current.as_mut().ok_or_else(|| {
                        Error::lexicon(name, line_no, "`slot` outside a verb block")
                    })?;
                    let slot = parse_slot(rest, name, line_no)?;
                    if frame.slot(slot.surface_case).is_some() {
                        return Err(Error::lexicon(
                            name,
                            line_no,
                            format!(
                                "duplicate {}-slot in `{}`",
                                slot.surface_case, frame.verb_lemma
                            ),
                        ));
                    }
                    frame.slots.push(slot);
                }
                "vn" => {
                    let (noun, verb) = rest.split_once("->").ok_or_else(|| {
                        Error::lexicon(name, line_no, "expected `vn <noun> -> <verb>`")
                    })?;
                    let (noun, verb) = (noun.trim(), verb.trim());
                    if noun.is_empty() || verb.is_empty() {
                        return Err(Error::lexicon(name, line_no, "empty verbal-noun mapping"));
                    }
                    dict.verbal_nouns.insert(noun.to_string(), verb.to_string());
                }
                other => {
                    return Err(Error::lexicon(
                        name,
                        line_no,
                        format!("unknown keyword `{other}`"),
                    ))
                }
            }
        }
        if let Some(frame) = current.take() {
            dict.add_frame(frame, name, text.lines().count())?;
        }
        Ok(dict)
    }

    fn add_frame(&mut self, frame: VerbCaseFrame, name: &str, line: usize) -> Result<()> {
        if self.frames.contains_key(&frame.verb_lemma) {
            return Err(Error::lexicon(
                name,
                line,
                format!("duplicate frame for `{}`", frame.verb_lemma),
            ));
        }
        self.frames.insert(frame.verb_lemma.clone(), frame);
        Ok(())
    }

    pub fn insert(&mut self, frame: VerbCaseFrame) {
        self.frames.insert(frame.verb_lemma.clone(), frame);
    }

    pub fn map_verbal_noun(&mut self, noun: &str, verb: &str) {
        self.verbal_nouns.insert(noun.to_string(), verb.to_string());
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Frame for a verb lemma, or for a verbal noun through its `vn` mapping.
    pub fn lookup(&self, lemma: &str) -> Option<&VerbCaseFrame> {
        self.frames.get(lemma).or_else(|| {
            self.verbal_nouns
                .get(lemma)
                .and_then(|verb| self.frames.get(verb))
        })
    }
}

pub fn lookup_case_frame<'a>(lemma: &str, dict: &'a CaseFrameDict) -> Option<&'a VerbCaseFrame> {
    dict.lookup(lemma)
}

fn parse_list(value: &str) -> Vec<String> {
    if value == "-" {
        return Vec::new();
    }
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_slot(rest: &str, name: &str, line: usize) -> Result<CaseSlot> {
    let mut case = None;
    let mut constraints = Vec::new();
    let mut examples = Vec::new();
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| {
            Error::lexicon(name, line, format!("expected key=value, got `{field}`"))
        })?;
        match key {
            "case" => {
                case = Some(
                    value
                        .parse::<Case>()
                        .map_err(|e| Error::lexicon(name, line, e))?,
                )
            }
            "constraints" => constraints = parse_list(value),
            "examples" => examples = parse_list(value),
            other => {
                return Err(Error::lexicon(
                    name,
                    line,
                    format!("unknown slot key `{other}`"),
                ))
            }
        }
    }
    let surface_case = case.ok_or_else(|| Error::lexicon(name, line, "slot lacks `case=`"))?;
    if constraints.is_empty() && examples.is_empty() {
        return Err(Error::lexicon(
            name,
            line,
            "slot needs constraints or examples",
        ));
    }
    if let Some(bad) = constraints
        .iter()
        .find(|c| !c.bytes().all(|b| b.is_ascii_digit()))
    {
        return Err(Error::lexicon(
            name,
            line,
            format!("constraint `{bad}` is not a code"),
        ));
    }
    Ok(CaseSlot {
        surface_case,
        constraints,
        example_nouns: examples,
    })
}

/// Outcome of matching a candidate against a case slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintMatch {
    pub satisfied: bool,
    /// Similarity level the score was read from.
    pub level: usize,
    pub score: i64,
}

/// Checks a candidate against a slot's category constraints and example nouns.
///
/// A slot is satisfied when one of the candidate's codes falls under a
/// constraint category, when its lemma is literally an example, or when its
/// similarity to some example exceeds the scale's match threshold. A
/// category match is scored at least at the lowest satisfying level.
pub fn satisfies_constraint(
    candidate: &Phrase,
    slot: &CaseSlot,
    t: &Thesaurus,
    scale: &SimilarityScale,
) -> Result<ConstraintMatch> {
    let codes = t.phrase_codes(candidate);
    let category_hit = codes.iter().any(|code| {
        slot.constraints
            .iter()
            .any(|c| code.starts_with(c.as_str()))
    });
    let literal = !candidate.lemma.is_empty() && slot.example_nouns.contains(&candidate.lemma);

    let threshold = scale.match_threshold();
    let example_level = if literal {
        t.depth().max(threshold + 1).min(scale.max_level())
    } else {
        slot.example_nouns
            .iter()
            .map(|ex| code_level(codes, t.codes(ex)))
            .max()
            .unwrap_or(0)
    };
    let satisfied = category_hit || literal || example_level > threshold;
    let level = if category_hit {
        example_level.max(threshold + 1)
    } else {
        example_level
    };
    Ok(ConstraintMatch {
        satisfied,
        level,
        score: scale.score(level)?,
    })
}
