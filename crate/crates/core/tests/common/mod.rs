//! Shared fixtures, generators, an independent brute-force resolver and the
//! property checks used by both the property tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use bridging::corpus::{
    parse_corpus, Case, ClauseRole, Discourse, GoldAntecedent, NounSubtype, Particle, Phrase,
    PhraseId, Punct, RefProperty, Sentence,
};
use bridging::dict::{arrange, merge_similar, CategoryTable, Provenance, UNKNOWN};
use bridging::eval::{evaluate, percent, Counts, EvalReport, Prediction};
use bridging::explain::{explain, parse_explain_totals};
use bridging::lexicon::{AttrFlag, AttributeLexicon, CaseSlot, LexiconSet, Thesaurus, XnoYStore};
use bridging::resolver::{Candidate, Resolver, ResolverConfig};
use bridging::salience::{distance, salience_list, SalienceKind, WeightTable};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn lexicons() -> LexiconSet {
    LexiconSet::load_dir(&fixture_dir().join("lexicons")).expect("fixture lexicons")
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join("corpus").join(name)).expect("fixture corpus")
}

pub fn discourse(name: &str) -> Discourse {
    let mut docs = parse_corpus(&corpus_text(name)).expect("fixture parses");
    assert_eq!(docs.len(), 1);
    docs.remove(0)
}

pub const CORPUS_FILES: [&str; 5] = [
    "kouteibuai.adc",
    "yane.adc",
    "kaiseki.adc",
    "ichibu.adc",
    "tonari.adc",
];

/// Totals keyed by candidate label (`INDEFINITE`, `GENERIC` or a lemma).
pub fn totals_by_label(scores: &BTreeMap<Candidate, i64>, d: &Discourse) -> BTreeMap<String, i64> {
    scores
        .iter()
        .map(|(c, v)| {
            let key = match c {
                Candidate::Phrase(id) => d.phrase(*id).unwrap().lemma.clone(),
                other => other.to_string(),
            };
            (key, *v)
        })
        .collect()
}

// ---------------------------------------------------------------- generator

const NOUNS: [&str; 16] = [
    "kuruma",
    "hune",
    "kouen",
    "ie",
    "yane",
    "kouteibuai",
    "nihon",
    "nisidoku",
    "butsurigakusha",
    "deeta",
    "denkishingou",
    "seito",
    "hannin",
    "tsuru",
    "hontou",
    "nazo",
];
const VERBS: [&str; 3] = ["mukau", "iku", "kaiseki-suru"];
const PARTICLES: [Particle; 15] = [
    Particle::Wa,
    Particle::Ga,
    Particle::Wo,
    Particle::Ni,
    Particle::Niwa,
    Particle::Mo,
    Particle::Da,
    Particle::Nara,
    Particle::Koso,
    Particle::He,
    Particle::De,
    Particle::Kara,
    Particle::Yori,
    Particle::No,
    Particle::Ga,
];
const ZERO_PARTICLES: [Particle; 5] = [
    Particle::Ga,
    Particle::Wa,
    Particle::Wo,
    Particle::Ni,
    Particle::Kara,
];
const CODES: [&str; 5] = ["11010", "12533", "31412", "24310", "41120"];

#[derive(Debug, Clone)]
pub struct PhraseDraft {
    kind: u8,
    word: usize,
    particles: Vec<usize>,
    punct: u8,
    role: u8,
    refprop: u8,
    head: usize,
    code: Option<usize>,
}

fn phrase_draft() -> impl Strategy<Value = PhraseDraft> {
    (
        0u8..10,
        0usize..64,
        prop::collection::vec(0usize..64, 0..=2),
        0u8..5,
        0u8..4,
        0u8..6,
        0usize..64,
        prop::option::weighted(0.15, 0usize..CODES.len()),
    )
        .prop_map(
            |(kind, word, particles, punct, role, refprop, head, code)| PhraseDraft {
                kind,
                word,
                particles,
                punct,
                role,
                refprop,
                head,
                code,
            },
        )
}

fn build_phrase(id: u32, draft: &PhraseDraft, root: bool) -> Phrase {
    let mut p = Phrase::noun(id, "");
    let pick = |i: usize| PARTICLES[i % PARTICLES.len()];
    match draft.kind {
        0 | 1 => {
            p.lemma = VERBS[draft.word % VERBS.len()].to_string();
            p.pos = "verb".into();
            p.noun_subtype = None;
        }
        2 => {
            p.lemma = String::new();
            p.noun_subtype = Some(NounSubtype::ZeroPronoun);
            p.particles = vec![ZERO_PARTICLES[draft.word % ZERO_PARTICLES.len()]];
        }
        3 => {
            p.lemma = "kare".into();
            p.noun_subtype = Some(NounSubtype::Pronoun);
        }
        4 => {
            p.lemma = "kaiseki".into();
            p.noun_subtype = Some(NounSubtype::Verbal);
        }
        5 => {
            p.lemma = ["ichibu", "tonari"][draft.word % 2].into();
            p.noun_subtype = Some(NounSubtype::Relational);
        }
        _ => p.lemma = NOUNS[draft.word % NOUNS.len()].to_string(),
    }
    if p.is_nominal() && !p.is_zero_pronoun() {
        p.particles = draft.particles.iter().map(|i| pick(*i)).collect();
        p.particles.dedup();
        p.clause_role = [
            ClauseRole::Other,
            ClauseRole::SubjectMain,
            ClauseRole::SubjectSubordinate,
            ClauseRole::Other,
        ][draft.role as usize % 4];
        p.ref_property = [
            RefProperty::Auto,
            RefProperty::Auto,
            RefProperty::Auto,
            RefProperty::Definite,
            RefProperty::Indefinite,
            RefProperty::Generic,
        ][draft.refprop as usize % 6];
        if let Some(c) = draft.code {
            p.sem_codes = vec![CODES[c].to_string()];
        }
    } else if p.is_zero_pronoun() {
        p.clause_role = if draft.role.is_multiple_of(2) {
            ClauseRole::SubjectSubordinate
        } else {
            ClauseRole::Other
        };
    }
    p.surface = if p.is_zero_pronoun() {
        String::new()
    } else if draft.punct == 4 {
        format!("kono {}", p.lemma)
    } else {
        p.lemma.clone()
    };
    p.punct_after = match (root, draft.punct) {
        (true, _) => Some(Punct::Period),
        (false, 0) => Some(Punct::Comma),
        _ => None,
    };
    p
}

/// Random valid discourse of at most 12 phrases; ids are 10, 20, 30, ...
pub fn arb_discourse() -> impl Strategy<Value = Discourse> {
    (
        prop::collection::vec(phrase_draft(), 1..=12),
        prop::collection::vec(any::<bool>(), 12),
    )
        .prop_map(|(drafts, breaks)| {
            let mut sentences: Vec<Vec<&PhraseDraft>> = vec![Vec::new()];
            for (i, draft) in drafts.iter().enumerate() {
                if i > 0 && breaks[i] && sentences.len() < 4 {
                    sentences.push(Vec::new());
                }
                sentences.last_mut().unwrap().push(draft);
            }
            let mut d = Discourse::new("rand");
            let mut next = 10u32;
            for (index, drafts) in sentences.iter().enumerate() {
                let first = next;
                let n = drafts.len();
                let phrases = drafts
                    .iter()
                    .enumerate()
                    .map(|(k, draft)| {
                        let root = k + 1 == n;
                        let mut p = build_phrase(first + 10 * k as u32, draft, root);
                        if !root {
                            let later = k + 1 + draft.head % (n - k - 1);
                            p.head_id = Some(PhraseId(first + 10 * later as u32));
                        }
                        p
                    })
                    .collect();
                next += 10 * n as u32;
                d.sentences.push(Sentence { index, phrases });
            }
            d
        })
}

// ------------------------------------------------------------------- oracle

fn codes_of<'a>(p: &'a Phrase, t: &'a Thesaurus) -> Vec<&'a str> {
    if p.sem_codes.is_empty() {
        t.codes(&p.lemma).iter().map(String::as_str).collect()
    } else {
        p.sem_codes.iter().map(String::as_str).collect()
    }
}

fn shared_prefix(a: &str, b: &str) -> usize {
    a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count()
}

fn best_level(a: &[&str], b: &[&str]) -> usize {
    let mut best = 0;
    for x in a {
        for y in b {
            best = best.max(shared_prefix(x, y));
        }
    }
    best
}

fn real(p: &Phrase) -> bool {
    p.noun_subtype.is_some() && p.noun_subtype != Some(NounSubtype::ZeroPronoun)
}

/// Topic/focus kind and weight, straight from the two weight tables.
pub fn oracle_weight(p: &Phrase) -> Option<(SalienceKind, i64)> {
    let has = |x: Particle| p.particles.contains(&x);
    let pronoun = matches!(
        p.noun_subtype?,
        NounSubtype::Pronoun | NounSubtype::ZeroPronoun
    );
    if pronoun && (has(Particle::Ga) || has(Particle::Wa)) {
        return Some((SalienceKind::Topic, 21));
    }
    if !pronoun && (has(Particle::Wa) || has(Particle::Niwa)) {
        return Some((SalienceKind::Topic, 20));
    }
    if has(Particle::Wa) || has(Particle::Niwa) {
        return None;
    }
    if pronoun {
        if has(Particle::Wo) || has(Particle::Ni) || has(Particle::Kara) {
            return Some((SalienceKind::Focus, 16));
        }
        return None;
    }
    let any = |xs: &[Particle]| xs.iter().any(|x| has(*x));
    if any(&[
        Particle::Ga,
        Particle::Mo,
        Particle::Da,
        Particle::Nara,
        Particle::Koso,
    ]) {
        Some((SalienceKind::Focus, 15))
    } else if any(&[Particle::Wo, Particle::Ni]) || p.punct_after.is_some() {
        Some((SalienceKind::Focus, 14))
    } else if any(&[Particle::He, Particle::De, Particle::Kara, Particle::Yori]) {
        Some((SalienceKind::Focus, 13))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prop {
    Def,
    Indef,
    Gen,
}

fn oracle_property(p: &Phrase, before: &[&Phrase], all: &[&Phrase]) -> Prop {
    match p.ref_property {
        RefProperty::Definite => Prop::Def,
        RefProperty::Indefinite => Prop::Indef,
        RefProperty::Generic => Prop::Gen,
        RefProperty::Auto => {
            let demo = ["kono", "sono", "ano", "kouiu"];
            let seen = !p.lemma.is_empty() && before.iter().any(|q| real(q) && q.lemma == p.lemma);
            let leading = p
                .surface
                .split(' ')
                .next()
                .is_some_and(|w| demo.contains(&w));
            let dependent = all
                .iter()
                .any(|q| q.head_id == Some(p.id) && demo.contains(&q.lemma.as_str()));
            if seen || leading || dependent {
                Prop::Def
            } else {
                Prop::Indef
            }
        }
    }
}

fn x_set(y: &str, lex: &LexiconSet) -> BTreeSet<String> {
    if lex.attrs.has(y, AttrFlag::NonAnaphoric) {
        return BTreeSet::new();
    }
    lex.xnoy
        .pairs()
        .iter()
        .filter(|(_, yy)| yy == y)
        .map(|(x, _)| x.clone())
        .filter(|x| {
            ![AttrFlag::Adjectival, AttrFlag::Numeral, AttrFlag::Temporal]
                .iter()
                .any(|f| lex.attrs.has(x, *f))
        })
        .collect()
}

/// Targets as `(anaphor, slot)` in document order.
pub fn oracle_targets(d: &Discourse, lex: &LexiconSet) -> Vec<(PhraseId, Option<Case>)> {
    let mut out = Vec::new();
    for p in d.sentences.iter().flat_map(|s| &s.phrases) {
        match p.noun_subtype {
            None | Some(NounSubtype::Pronoun) | Some(NounSubtype::ZeroPronoun) => continue,
            _ => {}
        }
        if lex.attrs.has(&p.lemma, AttrFlag::NonAnaphoric) {
            continue;
        }
        if p.noun_subtype == Some(NounSubtype::Verbal) {
            if let Some(frame) = lex.case_frames.lookup(&p.lemma) {
                for s in &frame.slots {
                    out.push((p.id, Some(s.surface_case)));
                }
                continue;
            }
        }
        let relational = p.noun_subtype == Some(NounSubtype::Relational)
            || lex.attrs.has(&p.lemma, AttrFlag::Relational);
        if relational || !x_set(&p.lemma, lex).is_empty() {
            out.push((p.id, None));
        }
    }
    out
}

/// Independent brute-force scoring of one target: candidate → total.
pub fn oracle_scores(
    d: &Discourse,
    lex: &LexiconSet,
    cfg: &ResolverConfig,
    anaphor_id: PhraseId,
    slot: Option<Case>,
) -> BTreeMap<Candidate, i64> {
    let all: Vec<&Phrase> = d.sentences.iter().flat_map(|s| &s.phrases).collect();
    let pos = all.iter().position(|p| p.id == anaphor_id).unwrap();
    let a = all[pos];
    let before = &all[..pos];
    let t = &lex.thesaurus;
    let scale = &cfg.similarity;
    let mut scores: BTreeMap<Candidate, i64> = BTreeMap::new();
    let mut add = |c: Candidate, v: i64| *scores.entry(c).or_insert(0) += v;

    let prop = oracle_property(a, before, &all);
    let p = match prop {
        Prop::Def => cfg.definiteness.definite,
        Prop::Indef => cfg.definiteness.indefinite,
        Prop::Gen => cfg.definiteness.generic,
    };
    if prop == Prop::Def && !a.lemma.is_empty() {
        for q in before.iter().filter(|q| real(q) && q.lemma == a.lemma) {
            add(Candidate::Phrase(q.id), cfg.r1_points);
        }
    }
    match prop {
        Prop::Gen => add(Candidate::Generic, cfg.r2_points),
        Prop::Indef => add(Candidate::Indefinite, cfg.r3_points),
        Prop::Def => {}
    }

    // topic/focus entries and subjects
    let sentence = d
        .sentences
        .iter()
        .find(|s| s.phrases.iter().any(|q| q.id == anaphor_id))
        .unwrap();
    let mut ancestors = BTreeSet::new();
    let mut h = a.head_id;
    while let Some(id) = h {
        if !ancestors.insert(id) {
            break;
        }
        h = sentence
            .phrases
            .iter()
            .find(|q| q.id == id)
            .and_then(|q| q.head_id);
    }
    let subjects: Vec<&Phrase> = sentence
        .phrases
        .iter()
        .filter(|q| q.id < a.id && real(q))
        .filter(|q| {
            matches!(
                q.clause_role,
                ClauseRole::SubjectMain | ClauseRole::SubjectSubordinate
            )
        })
        .filter(|q| q.head_id.is_some_and(|x| ancestors.contains(&x)))
        .collect();
    let salient: Vec<(usize, SalienceKind, i64)> = before
        .iter()
        .enumerate()
        .filter_map(|(i, q)| oracle_weight(q).map(|(k, w)| (i, k, w)))
        .collect();

    let weighted = |s_of: &dyn Fn(&Phrase) -> Option<i64>| -> Vec<(PhraseId, i64)> {
        let mut out = Vec::new();
        for (i, kind, w) in &salient {
            let q = before[*i];
            if !real(q) || subjects.iter().any(|s| s.id == q.id) {
                continue;
            }
            let dist = 1 + salient
                .iter()
                .filter(|(j, k, _)| j > i && k == kind)
                .count() as i64;
            if let Some(s) = s_of(q) {
                out.push((q.id, w - dist + p + s));
            }
        }
        for s in &subjects {
            if let Some(sv) = s_of(s) {
                out.push((s.id, cfg.subject_base + p + sv));
            }
        }
        out
    };

    let slot_score = |frame_slot: &CaseSlot, q: &Phrase| -> Option<i64> {
        if !cfg.semantics {
            return Some(0);
        }
        let codes = codes_of(q, t);
        let thr = scale.match_threshold();
        let hit = codes.iter().any(|c| {
            frame_slot
                .constraints
                .iter()
                .any(|k| c.starts_with(k.as_str()))
        });
        let literal = !q.lemma.is_empty() && frame_slot.example_nouns.contains(&q.lemma);
        let mut lvl = frame_slot
            .example_nouns
            .iter()
            .map(|e| {
                let ec: Vec<&str> = t.codes(e).iter().map(String::as_str).collect();
                best_level(&codes, &ec)
            })
            .max()
            .unwrap_or(0);
        if literal {
            lvl = t.depth().max(thr + 1).min(scale.max_level());
        }
        if hit {
            lvl = lvl.max(thr + 1);
        }
        (hit || literal || lvl > thr).then(|| scale.scores()[lvl])
    };

    let relational = a.noun_subtype == Some(NounSubtype::Relational)
        || lex.attrs.has(&a.lemma, AttrFlag::Relational);
    if let Some(case) = slot {
        let frame_slot = lex
            .case_frames
            .lookup(&a.lemma)
            .unwrap()
            .slot(case)
            .unwrap();
        for (id, v) in weighted(&|q| slot_score(frame_slot, q)) {
            add(Candidate::Phrase(id), v);
        }
    } else if relational {
        let modified = a
            .head_id
            .and_then(|hid| all.iter().find(|q| q.id == hid))
            .filter(|q| real(q) && a.particles.contains(&Particle::No));
        if let Some(x) = modified {
            for q in before.iter().filter(|q| real(q) && q.lemma == x.lemma) {
                add(Candidate::Phrase(q.id), cfg.r6_points);
            }
        } else {
            let case = a.particles.iter().find_map(|x| x.case()).or(matches!(
                a.clause_role,
                ClauseRole::SubjectMain | ClauseRole::SubjectSubordinate
            )
            .then_some(Case::Ga));
            let verb_slot = a
                .head_id
                .and_then(|hid| all.iter().find(|q| q.id == hid))
                .and_then(|v| lex.case_frames.lookup(&v.lemma))
                .zip(case)
                .and_then(|(f, c)| f.slot(c));
            if let Some(vs) = verb_slot {
                for (id, v) in weighted(&|q| slot_score(vs, q)) {
                    add(Candidate::Phrase(id), v);
                }
            }
        }
    } else {
        let xs = x_set(&a.lemma, lex);
        let s_of = |q: &Phrase| -> Option<i64> {
            if !cfg.semantics {
                return Some(0);
            }
            let codes = codes_of(q, t);
            let lvl = xs
                .iter()
                .map(|x| {
                    let xc: Vec<&str> = t.codes(x).iter().map(String::as_str).collect();
                    best_level(&codes, &xc)
                })
                .max()
                .unwrap_or(0);
            Some(scale.scores()[lvl])
        };
        for (id, v) in weighted(&s_of) {
            add(Candidate::Phrase(id), v);
        }
    }
    scores
}

pub fn oracle_winner(scores: &BTreeMap<Candidate, i64>) -> Option<Candidate> {
    let mut best: Option<(Candidate, i64)> = None;
    for (c, v) in scores {
        let better = match best {
            None => true,
            Some((bc, bv)) => {
                *v > bv
                    || (*v == bv && c.is_real() && !bc.is_real())
                    || (*v == bv && c.is_real() == bc.is_real() && c.phrase_id() > bc.phrase_id())
            }
        };
        if better {
            best = Some((*c, *v));
        }
    }
    best.map(|(c, _)| c)
}

// --------------------------------------------------------------- properties

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

/// Library resolution equals the brute-force oracle on every target.
pub fn prop_oracle_equivalence(
    d: &Discourse,
    lex: &LexiconSet,
    semantics: bool,
) -> Result<(), TestCaseError> {
    let cfg = ResolverConfig {
        semantics,
        ..ResolverConfig::default()
    };
    let r = Resolver::new(lex, &cfg);
    let results = r
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let targets = oracle_targets(d, lex);
    let got: Vec<(PhraseId, Option<Case>)> =
        results.iter().map(|x| (x.anaphor_id, x.slot)).collect();
    check!(got == targets, "targets {got:?} != oracle {targets:?}");
    for res in &results {
        let expected = oracle_scores(d, lex, &cfg, res.anaphor_id, res.slot);
        check!(
            res.all_scores == expected,
            "anaphor {} slot {:?}: {:?} != oracle {:?}",
            res.anaphor_id,
            res.slot,
            res.all_scores,
            expected
        );
        check!(
            res.winner == oracle_winner(&expected),
            "winner mismatch at {}",
            res.anaphor_id
        );
        let total = res.winner.map_or(0, |w| expected[&w]);
        check!(res.total == total, "total mismatch at {}", res.anaphor_id);
    }
    Ok(())
}

/// With one P for every referential property, the best real candidate does
/// not depend on that P when all real proposals carry P.
pub fn prop_uniform_p(
    d: &Discourse,
    lex: &LexiconSet,
    p1: i64,
    p2: i64,
) -> Result<(), TestCaseError> {
    let cfg = |p: i64| {
        let mut c = ResolverConfig::default();
        c.definiteness.definite = p;
        c.definiteness.indefinite = p;
        c.definiteness.generic = p;
        c
    };
    let (c1, c2) = (cfg(p1), cfg(p2));
    let (r1, r2) = (Resolver::new(lex, &c1), Resolver::new(lex, &c2));
    let a = r1
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = r2
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (x, y) in a.iter().zip(&b) {
        let scored_only = x
            .proposals
            .iter()
            .filter(|p| p.candidate.is_real())
            .all(|p| p.breakdown.is_some());
        if !scored_only {
            continue;
        }
        let best = |m: &BTreeMap<Candidate, i64>| {
            m.iter()
                .filter(|(c, _)| c.is_real())
                .max_by_key(|(c, v)| (**v, c.phrase_id()))
                .map(|(c, _)| *c)
        };
        check!(
            best(&x.all_scores) == best(&y.all_scores),
            "argmax moved for {} between P={p1} and P={p2}",
            x.anaphor_id
        );
    }
    Ok(())
}

/// Inserting a salient phrase right before the last phrase raises D by one
/// for same-kind entries and leaves other entries alone.
pub fn prop_distance_insertion(d: &Discourse, topic: bool) -> Result<(), TestCaseError> {
    let table = WeightTable::default();
    let last = d.sentences.last().unwrap().phrases.last().unwrap().id;
    let before = salience_list(d, last, &table).map_err(|e| TestCaseError::fail(e.to_string()))?;

    let mut grown = d.clone();
    let mut extra = Phrase::noun(last.0 - 5, "nazo");
    extra.particles = vec![if topic { Particle::Wa } else { Particle::Wo }];
    extra.head_id = Some(last);
    let s = grown.sentences.last_mut().unwrap();
    let at = s.phrases.len() - 1;
    s.phrases.insert(at, extra);
    let after =
        salience_list(&grown, last, &table).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let kind = if topic {
        SalienceKind::Topic
    } else {
        SalienceKind::Focus
    };

    check!(
        after.len() == before.len() + 1,
        "inserted phrase not salient"
    );
    for e in &before {
        let old = distance(e, &before).unwrap();
        let moved = after.iter().find(|x| x.phrase_id == e.phrase_id).unwrap();
        let new = distance(moved, &after).unwrap();
        let expected = old + i64::from(e.kind == kind);
        check!(new == expected, "D of {} went {old} -> {new}", e.phrase_id);
    }
    let inserted = after.iter().find(|x| x.phrase_id.0 == last.0 - 5).unwrap();
    check!(
        distance(inserted, &after).unwrap() == 1,
        "inserted entry not nearest"
    );
    Ok(())
}

/// Flagged X never influences S: a store with every flagged pair removed
/// yields identical results.
pub fn prop_xnoy_filter(
    d: &Discourse,
    lex: &LexiconSet,
    pairs: &[(usize, usize)],
    flags: &[(usize, u8)],
) -> Result<(), TestCaseError> {
    let ys = ["kouteibuai", "yane", "kuruma", "hune", "ie", "kouen"];
    let xs = [
        "nihon", "beikoku", "ie", "tatemono", "kuruma", "hontou", "sakuban", "seito", "kouen",
    ];
    let pairs: Vec<(&str, &str)> = pairs
        .iter()
        .map(|(x, y)| (xs[x % xs.len()], ys[y % ys.len()]))
        .collect();
    let mut attrs = AttributeLexicon::default();
    for (x, f) in flags {
        let flag = [AttrFlag::Adjectival, AttrFlag::Numeral, AttrFlag::Temporal][*f as usize % 3];
        attrs.insert(xs[x % xs.len()], flag);
    }
    let full = LexiconSet {
        xnoy: XnoYStore::from_pairs(pairs.iter().copied()),
        attrs: attrs.clone(),
        ..lex.clone()
    };
    let pruned = LexiconSet {
        xnoy: XnoYStore::from_pairs(
            pairs
                .iter()
                .copied()
                .filter(|(x, _)| !attrs.excluded_modifier(x)),
        ),
        attrs,
        ..lex.clone()
    };
    let cfg = ResolverConfig::default();
    let a = Resolver::new(&full, &cfg)
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = Resolver::new(&pruned, &cfg)
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    check!(a == b, "flagged modifiers changed the resolution");
    Ok(())
}

/// Arrangement drops flagged X, places every other X in exactly one group
/// consistent with its codes, and merging is idempotent and keeps corpus entries.
pub fn prop_dictionary(
    pairs: &[(usize, usize)],
    flags: &[(usize, u8)],
    lex: &LexiconSet,
) -> Result<(), TestCaseError> {
    let ys = ["kokumin", "genshu", "yane"];
    let xs = [
        "aite", "kuni", "nihon", "soren", "raihin", "gaikoku", "ie", "kuruma", "keishiki", "hurui",
        "sakuban", "nazo", "midori", "zou",
    ];
    let store = XnoYStore::from_pairs(
        pairs
            .iter()
            .map(|(x, y)| (xs[x % xs.len()], ys[y % ys.len()])),
    );
    let mut attrs = AttributeLexicon::default();
    for (x, f) in flags {
        let flag = [
            AttrFlag::Adjectival,
            AttrFlag::Numeral,
            AttrFlag::Temporal,
            AttrFlag::Relational,
        ][*f as usize % 4];
        attrs.insert(xs[x % xs.len()], flag);
    }
    let cats = CategoryTable::default();
    let t = &lex.thesaurus;
    let frames: Vec<_> = ys
        .iter()
        .map(|y| arrange(y, &store, t, &attrs, &cats))
        .collect();

    for f in &frames {
        let mut seen = BTreeSet::new();
        for g in &f.groups {
            for m in &g.members {
                check!(
                    !attrs.excluded_modifier(&m.lemma),
                    "flagged {} kept",
                    m.lemma
                );
                check!(seen.insert(m.lemma.clone()), "{} in two groups", m.lemma);
                if g.label != UNKNOWN {
                    check!(
                        t.codes(&m.lemma).iter().any(|c| c.starts_with(&g.prefix)),
                        "{} has no code under {}",
                        m.lemma,
                        g.prefix
                    );
                }
            }
        }
        let expected: BTreeSet<String> = store
            .modifiers_of(&f.y_lemma)
            .filter(|x| !attrs.excluded_modifier(x))
            .map(String::from)
            .collect();
        check!(seen == expected, "members {seen:?} != {expected:?}");
        for r in &f.rejected {
            check!(attrs.excluded_modifier(r), "{r} rejected without flag");
        }
    }

    let corpus_members = |f: &bridging::dict::ArrangedFrame| -> BTreeSet<(String, String)> {
        f.groups
            .iter()
            .flat_map(|g| {
                g.members
                    .iter()
                    .filter(|m| m.provenance == Provenance::Corpus)
                    .map(|m| (g.label.clone(), m.lemma.clone()))
            })
            .collect()
    };
    for target in &frames {
        check!(
            merge_similar(target, target) == *target,
            "self-merge changed frame"
        );
        for source in &frames {
            let once = merge_similar(target, source);
            check!(merge_similar(&once, source) == once, "merge not idempotent");
            check!(
                corpus_members(&once) == corpus_members(target),
                "merge disturbed corpus entries"
            );
        }
    }
    Ok(())
}

/// Explain tables re-parse to the resolver's totals.
pub fn prop_explain_round_trip(d: &Discourse, lex: &LexiconSet) -> Result<(), TestCaseError> {
    let cfg = ResolverConfig::default();
    let results = Resolver::new(lex, &cfg)
        .resolve_document(d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    for res in &results {
        let text = explain(res, d);
        let parsed = parse_explain_totals(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(parsed.len() == 1, "expected one table");
        let got: BTreeMap<String, i64> = parsed[0].totals.iter().cloned().collect();
        let want: BTreeMap<String, i64> = res
            .all_scores
            .iter()
            .map(|(c, v)| {
                let label = match c {
                    Candidate::Indefinite => "Indefinite".to_string(),
                    Candidate::Generic => "Generic".to_string(),
                    Candidate::Phrase(id) => {
                        let lemma = &d.phrase(*id).unwrap().lemma;
                        if lemma.is_empty() {
                            format!("#{id}")
                        } else {
                            format!("{lemma}#{id}")
                        }
                    }
                };
                (label, *v)
            })
            .collect();
        check!(got == want, "{got:?} != {want:?}");
    }
    Ok(())
}

/// ADC serialization round-trips.
pub fn prop_adc_round_trip(d: &Discourse) -> Result<(), TestCaseError> {
    let text = d.to_adc();
    let back = parse_corpus(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    check!(
        back.len() == 1 && back[0] == *d,
        "round trip changed the discourse"
    );
    Ok(())
}

/// Attach random gold links (or NONE) to every target so it can be evaluated.
pub fn with_random_gold(d: &Discourse, lex: &LexiconSet, seeds: &[u8]) -> Discourse {
    let mut d = d.clone();
    let targets = oracle_targets(&d, lex);
    let ids: Vec<PhraseId> = d.phrases().map(|p| p.id).collect();
    let mut k = 0;
    for s in &mut d.sentences {
        for p in &mut s.phrases {
            if !targets.iter().any(|(id, _)| *id == p.id) {
                continue;
            }
            let seed = seeds[k % seeds.len()] as usize;
            k += 1;
            let earlier: Vec<PhraseId> = ids.iter().copied().filter(|i| *i < p.id).collect();
            p.gold_antecedents = if earlier.is_empty() || seed.is_multiple_of(3) {
                vec![GoldAntecedent::None]
            } else {
                let label = if p.noun_subtype == Some(NounSubtype::Verbal) {
                    ["ga", "wo"][seed % 2].to_string()
                } else {
                    "rel".to_string()
                };
                vec![GoldAntecedent::Antecedent {
                    label,
                    id: earlier[seed % earlier.len()],
                }]
            };
        }
    }
    d
}

/// Evaluation is permutation-invariant, internally consistent and merges associatively.
pub fn prop_eval(
    d: &Discourse,
    lex: &LexiconSet,
    seeds: &[u8],
    shift: usize,
) -> Result<(), TestCaseError> {
    let d = with_random_gold(d, lex, seeds);
    let cfg = ResolverConfig::default();
    let results = Resolver::new(lex, &cfg)
        .resolve_document(&d)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut preds: Vec<Prediction> = results
        .iter()
        .map(|r| Prediction::from_result(&d.doc_id, r))
        .collect();
    let corpus = vec![d];
    let a = evaluate(&preds, &corpus).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if !preds.is_empty() {
        let n = shift % preds.len();
        preds.rotate_left(n);
        preds.reverse();
    }
    let b = evaluate(&preds, &corpus).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check!(a == b, "order changed the report");
    for c in [a.verbal, a.non_verbal, a.total()] {
        check!(
            c.correct <= c.gold_positive.min(c.system_positive),
            "{c:?} inconsistent"
        );
        check!(
            c.recall_percent() == oracle_percent(c.correct, c.gold_positive),
            "recall"
        );
        check!(
            c.precision_percent() == oracle_percent(c.correct, c.system_positive),
            "precision"
        );
    }
    let x = EvalReport {
        verbal: Counts::new(1, 2, 3),
        non_verbal: Counts::new(seeds.len(), seeds.len() + 1, seeds.len() + 2),
    };
    check!(
        a.merge(b).merge(x) == a.merge(b.merge(x)),
        "merge not associative"
    );
    check!(a.merge(x) == x.merge(a), "merge not commutative");
    Ok(())
}

/// Half-up integer percentage by long division.
pub fn oracle_percent(num: usize, den: usize) -> Option<usize> {
    if den == 0 {
        return None;
    }
    let q = 100 * num / den;
    let r = 100 * num % den;
    Some(if 2 * r >= den { q + 1 } else { q })
}

pub fn prop_percent(num: usize, den: usize) -> Result<(), TestCaseError> {
    check!(
        percent(num, den) == oracle_percent(num, den),
        "percent({num}, {den})"
    );
    Ok(())
}
