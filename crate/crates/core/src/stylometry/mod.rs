//! Stylometric features from source text and its syntax tree.

mod backend;
mod features;
mod maintainability;
mod matrix;
mod summary;

pub use backend::{GrammarBackend, SyntaxNode, SyntaxTree, TreeSitterBackend};
pub use features::{
    avg_line_length, features_from_summary, node_feature_name, parse, whitespace_ratio,
    FeatureOptions, FeatureVector, Stylometer, ASSIGNMENT_COUNT, AST_DEPTH, AST_FEATURES,
    AVG_FUNCTION_LENGTH, AVG_LINE_LENGTH, AVG_VAR_NAME_LENGTH, FUNCTION_DENSITY,
    MAINTAINABILITY_INDEX, MAX_DECISION_LENGTH, NODE_DENSITY_PREFIX, TEXT_FEATURES,
    WHITESPACE_RATIO,
};
pub use maintainability::{maintainability_index, mi_from_parts, MI_MAX};
pub use matrix::{
    build_matrix, fit_schema, median, read_csv, read_sidecar, schema_hash, write_csv,
    write_sidecar, FeatureMatrix, FeatureSchema, MatrixSidecar,
};
pub use summary::{lines_of_code, summarize, AstSummary, HalsteadCounts};

#[derive(Debug, thiserror::Error)]
pub enum StylometryError {
    #[error("no grammar for language `{0}`")]
    UnsupportedLanguage(String),
    #[error("grammar backend: {0}")]
    Backend(String),
    #[error("unparsable")]
    Unparsable,
    #[error("all features sparse")]
    AllFeaturesSparse,
    #[error("no rows to fit the feature schema on")]
    EmptyFitSet,
    #[error("feature schema mismatch: expected {expected}, found {found}")]
    SchemaMismatch { expected: String, found: String },
    #[error("{0}")]
    Io(String),
}
