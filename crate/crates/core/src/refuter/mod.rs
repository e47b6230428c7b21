//! Small-graph census and a bounded completion search around long induced paths.

mod census;
mod search;

pub use census::{all_graphs, census, connected_graphs, qualifies, CensusRow, CENSUS_LIMIT};
pub use search::{
    refute_path, refute_with, resume, verify_model, Checkpoint, Model, RefutationOutcome,
    RefuteConfig, SearchStats, MODEL_LIMIT,
};

/// Printed alongside every refuter verdict.
pub const VOCABULARY_CAVEAT: &str =
    "Refuted is relative to the witness cap W: no completion with at most W \
auxiliary vertices exists, which does not exclude larger completions.";
