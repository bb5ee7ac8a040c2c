//! Score tables in the layout of a per-candidate points matrix.
//!
//! ```text
//! anaphor kouteibuai#8 -> nisidoku#7 (25)
//! candidate         | Indefinite | nisidoku#7 | jikokutuuka#4 | ...
//! R3                |         10 |            |               |
//! R4                |            |         25 |           -23 |
//! ...
//! Total Score       |         10 |         25 |           -23 |
//! ```

use crate::corpus::Discourse;
use crate::error::{Error, Result};
use crate::resolver::{Candidate, ResolutionResult, Rule};

pub const HEADER: &str = "candidate";
pub const TOTAL_ROW: &str = "Total Score";

fn label(c: Candidate, d: &Discourse) -> String {
    match c {
        Candidate::Indefinite => "Indefinite".into(),
        Candidate::Generic => "Generic".into(),
        Candidate::Phrase(id) => match d.phrase(id) {
            Some(p) if !p.lemma.is_empty() => format!("{}#{id}", p.lemma),
            _ => format!("#{id}"),
        },
    }
}

/// Renders the score matrix of one resolution result.
pub fn explain(result: &ResolutionResult, d: &Discourse) -> String {
    let mut columns: Vec<Candidate> = result.all_scores.keys().copied().collect();
    // pseudo-candidates first, then most recent phrase first
    columns.sort_by_key(|c| (c.is_real(), std::cmp::Reverse(c.phrase_id())));

    let mut rows: Vec<(String, Vec<Option<i64>>)> = Vec::new();
    for rule in Rule::ALL {
        if !result.proposals.iter().any(|p| p.rule == rule) {
            continue;
        }
        let cells = columns
            .iter()
            .map(|c| {
                let points: Vec<i64> = result
                    .proposals
                    .iter()
                    .filter(|p| p.rule == rule && p.candidate == *c)
                    .map(|p| p.points)
                    .collect();
                (!points.is_empty()).then(|| points.iter().sum())
            })
            .collect();
        rows.push((rule.to_string(), cells));
    }

    if result.proposals.iter().any(|p| p.breakdown.is_some()) {
        let component = |name: &str, f: &dyn Fn(&crate::resolver::Breakdown) -> Option<i64>| {
            let cells = columns
                .iter()
                .map(|c| {
                    result
                        .proposals
                        .iter()
                        .filter(|p| p.candidate == *c)
                        .find_map(|p| p.breakdown.as_ref())
                        .and_then(f)
                })
                .collect();
            (name.to_string(), cells)
        };
        rows.push(component("Subject", &|b| b.base));
        rows.push(component("Topic/Focus (W)", &|b| b.weight));
        rows.push(component("Distance (D)", &|b| b.distance.map(|x| -x)));
        rows.push(component("Definiteness (P)", &|b| Some(b.p)));
        rows.push(component("Similarity (S)", &|b| Some(b.s)));
    }
    rows.push((
        TOTAL_ROW.to_string(),
        columns
            .iter()
            .map(|c| result.all_scores.get(c).copied())
            .collect(),
    ));

    let headers: Vec<String> = columns.iter().map(|c| label(*c, d)).collect();
    let first_width = rows
        .iter()
        .map(|(name, _)| name.len())
        .chain([HEADER.len()])
        .max()
        .unwrap_or(0);
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            rows.iter()
                .filter_map(|(_, cells)| cells[i].map(|v| v.to_string().len()))
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let anaphor = d.phrase(result.anaphor_id).map_or_else(
        || result.anaphor_id.to_string(),
        |p| format!("{}#{}", p.lemma, p.id),
    );
    let mut out = format!("anaphor {anaphor}");
    if let Some(slot) = result.slot {
        out.push_str(&format!(" slot {slot}"));
    }
    match result.winner {
        Some(w) => out.push_str(&format!(" -> {} ({})", label(w, d), result.total)),
        None => out.push_str(" -> none"),
    }
    out.push('\n');

    out.push_str(&format!("{HEADER:<first_width$}"));
    for (h, w) in headers.iter().zip(&widths) {
        out.push_str(&format!(" | {h:>w$}"));
    }
    out.push('\n');
    for (name, cells) in &rows {
        out.push_str(&format!("{name:<first_width$}"));
        for (cell, w) in cells.iter().zip(&widths) {
            let text = cell.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(" | {text:>w$}"));
        }
        out.push('\n');
    }
    out
}

/// Column labels and totals read back from one rendered table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplainTotals {
    pub title: String,
    pub totals: Vec<(String, i64)>,
}

/// Reads the `Total Score` row of every table in `text`.
pub fn parse_explain_totals(text: &str) -> Result<Vec<ExplainTotals>> {
    let mut out = Vec::new();
    let mut title = String::new();
    let mut names: Option<Vec<String>> = None;
    for line in text.lines() {
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        match cells[0] {
            HEADER => {
                names = Some(cells[1..].iter().map(|s| s.to_string()).collect());
            }
            TOTAL_ROW => {
                let names = names
                    .take()
                    .ok_or_else(|| Error::Structural("total row before header".into()))?;
                let totals = names
                    .into_iter()
                    .zip(&cells[1..])
                    .map(|(n, v)| {
                        v.parse::<i64>()
                            .map(|v| (n, v))
                            .map_err(|_| Error::Structural(format!("bad total `{v}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(ExplainTotals {
                    title: std::mem::take(&mut title),
                    totals,
                });
            }
            first if first.starts_with("anaphor ") => title = first.to_string(),
            _ => {}
        }
    }
    Ok(out)
}
