//! Lexical resources: thesaurus, verb case frames, "X no Y" examples and
//! noun attributes.

mod case_frame;
mod thesaurus;
mod xnoy;

use std::path::Path;

pub use case_frame::{
    lookup_case_frame, satisfies_constraint, CaseFrameDict, CaseSlot, ConstraintMatch,
    VerbCaseFrame,
};
pub use thesaurus::{
    code_level, similarity_level, similarity_score, SimilarityScale, Thesaurus, ThesaurusEntry,
};
pub use xnoy::{xnoy_modifier_set, AttrFlag, AttributeLexicon, NounAttributes, XnoYStore};

use crate::error::{read_file, Result};

pub const THESAURUS_FILE: &str = "thesaurus.tsv";
pub const CASE_FRAME_FILE: &str = "caseframes.txt";
pub const XNOY_FILE: &str = "xnoy.tsv";
pub const ATTRIBUTE_FILE: &str = "attrs.tsv";

/// All four lexicons, immutable once loaded.
#[derive(Debug, Clone, Default)]
pub struct LexiconSet {
    pub thesaurus: Thesaurus,
    pub case_frames: CaseFrameDict,
    pub xnoy: XnoYStore,
    pub attrs: AttributeLexicon,
}

impl LexiconSet {
    /// Loads `thesaurus.tsv`, `caseframes.txt`, `xnoy.tsv` and `attrs.tsv` from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let load = |name: &str| read_file(&dir.join(name));
        Ok(LexiconSet {
            thesaurus: Thesaurus::parse(&load(THESAURUS_FILE)?, THESAURUS_FILE)?,
            case_frames: CaseFrameDict::parse(&load(CASE_FRAME_FILE)?, CASE_FRAME_FILE)?,
            xnoy: XnoYStore::parse(&load(XNOY_FILE)?, XNOY_FILE)?,
            attrs: AttributeLexicon::parse(&load(ATTRIBUTE_FILE)?, ATTRIBUTE_FILE)?,
        })
    }

    pub fn from_texts(thesaurus: &str, case_frames: &str, xnoy: &str, attrs: &str) -> Result<Self> {
        Ok(LexiconSet {
            thesaurus: Thesaurus::parse(thesaurus, THESAURUS_FILE)?,
            case_frames: CaseFrameDict::parse(case_frames, CASE_FRAME_FILE)?,
            xnoy: XnoYStore::parse(xnoy, XNOY_FILE)?,
            attrs: AttributeLexicon::parse(attrs, ATTRIBUTE_FILE)?,
        })
    }
}
