//! Detection and authorship attribution of LLM-generated source code.
//!
//! The crate is organized as a pipeline: [`corpus`] ingests and cleans
//! labeled snippets, [`stylometry`] turns them into feature matrices,
//! [`models`] trains tabular classifiers, [`zeroshot`] provides a
//! training-free baseline, [`eval`] scores predictions under in-domain and
//! out-of-domain protocols, and [`explain`] ranks features.

pub mod corpus;
pub mod eval;
pub mod explain;
pub mod labels;
pub mod scalar;
pub mod models;
pub mod pipeline;
pub mod stylometry;
pub mod synth;
pub mod zeroshot;

pub use labels::{LabelSpace, Task};
pub use scalar::Scalar;

pub type FeatureVector64 = stylometry::FeatureVector<f64>;
pub type FeatureMatrix64 = stylometry::FeatureMatrix<f64>;
pub type FeatureMatrix32 = stylometry::FeatureMatrix<f32>;
pub type TrainedModel64 = models::TrainedModel<f64>;
pub type TrainedModel32 = models::TrainedModel<f32>;
