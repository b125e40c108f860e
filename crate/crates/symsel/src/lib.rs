//! Class-specific feature selection for interval-valued data.
//!
//! Samples whose features are closed intervals are compared with a
//! similarity kernel over interval vectors. Per class, the transposed
//! feature rows are clustered by K-Means under that kernel and each
//! cluster elects the feature most similar on average to its mates;
//! the elected indices plus the class's projected training samples
//! form a knowledgebase. A query then claims each class in turn: it is
//! projected onto the class's own features, scored by a symbolic
//! nearest-neighbour classifier, and assigned to the class with the
//! maximum score. An experiment harness sweeps train/test fractions
//! and K and reports accuracy with and without selection.
//!
//! All randomness derives from one master seed through documented
//! stream splitting, so every result in the crate is reproducible
//! bit-for-bit, with or without the `parallel` feature.

pub mod classify;
pub mod cli;
pub mod clustering;
pub mod dataset;
pub mod error;
pub mod experiment;
pub mod interval;
pub mod par;
pub mod seeding;
pub mod selection;

pub use classify::{ClassifierConfig, ClassifierKind};
pub use clustering::{interval_kmeans, ClusterModel, KMeansConfig};
pub use dataset::{
    load_dataset, parse_dataset, stratified_split, synthesize_dataset, transpose_by_class,
    IntervalFeatureMatrix,
};
pub use error::{Error, Result};
pub use interval::{isv, sim, ssk, Interval, IntervalVector, UnitRatio};
pub use selection::{build_knowledgebase, Knowledgebase};
