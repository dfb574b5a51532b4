//! Corpus ingestion, quality assurance, and stratified splitting.

mod comments;
mod ingest;
mod qa;
mod sample;
mod split;
mod tokens;

pub use comments::{strip_code, strip_comments, supports as has_comment_grammar};
pub use ingest::{content_id, ingest, parse_record, read_jsonl, write_jsonl};
pub use qa::{
    deduplicate, filter_by_length, filter_by_length_with_cuts, nearest_rank, normalize_for_dedup,
    run_qa, LengthFiltered, PercentileCut, QaConfig, QaReport,
};
pub use sample::{CodeSample, Generator, Label, Language, Source, Split};
pub use split::{allocate, assign_splits, SplitAssignment, SplitOutcome, StratifyKey};
pub use tokens::count_tokens;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: malformed record: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: missing mandatory field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: {reason}")]
    Invariant { line: usize, reason: String },
    #[error("no comment grammar for language `{language}`")]
    NoCommentGrammar { language: String },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
