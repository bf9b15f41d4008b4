//! Candidate enumeration and the end-to-end filter pipeline.
//!
//! [`enumerate_candidates`] lists strongly connected digraphs up to
//! isomorphism, [`analyze_digraph`] runs every filter on one of them, and the
//! drivers in this module apply both to the fixture corpus and to small `n`.

mod analysis;
mod enumerate;
mod verify;

pub use analysis::{
    analyze_digraph, analyze_pattern, classify_pattern, refutation_record, AnalyzeOptions, CandidateFilterReport, ClassOutcome,
    FilterOutcome, PatternAnalysis, PatternVerdict, RefutationRecord, SignClassOutcome, VariantOutcome, Verdict, MAX_ANALYZE_N,
};
pub use enumerate::{enumerate_candidates, EnumOptions, Enumeration, MAX_ENUM_EDGES, MAX_ENUM_VERTICES};
pub use verify::{
    brute_force_candidates, candidate_closure_check, closure_check, verify_fifteen, verify_min_entries, ClosureReport,
    Equivalence, LevelSummary, MinEntriesReport, StableWitness, MAX_MIN_ENTRIES_N,
};
