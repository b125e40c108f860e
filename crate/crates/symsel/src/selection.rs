//! Per-cluster representative election and the per-class feature
//! knowledgebase.
//!
//! Within each cluster of feature rows, the representative is the
//! feature with the highest average similarity to its cluster mates;
//! the selected original-feature indices per class, together with the
//! class's training samples projected onto them, form the
//! knowledgebase consumed at classification time.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::clustering::{interval_kmeans, KMeansConfig};
use crate::dataset::{transpose_by_class, IntervalFeatureMatrix};
use crate::error::{Error, Result};
use crate::interval::{ssk, Interval, IntervalVector};
use crate::par;
use crate::seeding::{self, Domain};

pub const KNOWLEDGEBASE_SCHEMA_VERSION: u32 = 1;

/// Pairwise kernel values of one cluster's features: symmetric with a
/// unit diagonal, indexed positionally with `feature_ids` mapping back
/// to original feature numbering.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    pub values: Vec<Vec<f64>>,
    pub feature_ids: Vec<usize>,
}

/// Build the pairwise similarity matrix for the given feature rows.
/// The kernel is symmetric bit-for-bit, so the lower triangle is
/// mirrored rather than recomputed.
pub fn similarity_matrix(features: &[&IntervalVector], feature_ids: &[usize]) -> SimilarityMatrix {
    assert_eq!(features.len(), feature_ids.len());
    assert!(!features.is_empty(), "similarity matrix of zero features");
    let z = features.len();
    let mut values = vec![vec![0.0; z]; z];
    for a in 0..z {
        values[a][a] = 1.0;
        for b in a + 1..z {
            let s = ssk(features[a], features[b]).get();
            values[a][b] = s;
            values[b][a] = s;
        }
    }
    SimilarityMatrix {
        values,
        feature_ids: feature_ids.to_vec(),
    }
}

/// Row means of the similarity matrix. The unit diagonal contributes,
/// so every value is positive.
pub fn average_similarity(sm: &SimilarityMatrix) -> Vec<f64> {
    let z = sm.values.len() as f64;
    sm.values
        .iter()
        .map(|row| row.iter().sum::<f64>() / z)
        .collect()
}

/// The original-feature index whose average similarity is maximal;
/// ties go to the lowest original index.
pub fn cluster_representative(sm: &SimilarityMatrix) -> usize {
    let asv = average_similarity(sm);
    let mut best = sm.feature_ids[0];
    let mut best_asv = asv[0];
    for (pos, &id) in sm.feature_ids.iter().enumerate() {
        if asv[pos] > best_asv || (asv[pos] == best_asv && id < best) {
            best = id;
            best_asv = asv[pos];
        }
    }
    best
}

/// One class's selection outcome: K distinct original-feature indices
/// ordered by cluster index, plus how the clustering behaved.
#[derive(Debug, Clone)]
pub struct SelectionResult {
    pub indices: Vec<usize>,
    pub converged: bool,
    pub iterations_run: usize,
}

/// Cluster a class's feature rows and elect one representative per
/// cluster.
pub fn select_class_features(
    features: &[IntervalVector],
    cfg: &KMeansConfig,
) -> Result<SelectionResult> {
    let model = interval_kmeans(features, cfg)?;
    let mut indices = Vec::with_capacity(cfg.k);
    for q in 0..cfg.k {
        let member_ids = model.members(q);
        let rows: Vec<&IntervalVector> = member_ids.iter().map(|&a| &features[a]).collect();
        let sm = similarity_matrix(&rows, &member_ids);
        indices.push(cluster_representative(&sm));
    }
    // clusters partition the features, so representatives are distinct
    debug_assert!(
        (1..indices.len()).all(|i| !indices[..i].contains(&indices[i])),
        "representatives must be distinct"
    );
    Ok(SelectionResult {
        indices,
        converged: model.converged,
        iterations_run: model.iterations_run,
    })
}

/// `features` restricted to `indices`, order-preserving.
pub fn project(features: &[Interval], indices: &[usize]) -> IntervalVector {
    indices.iter().map(|&i| features[i]).collect()
}

/// Per-class selected feature indices plus the class's training
/// samples projected onto them. Everything classification needs.
///
/// Serialized as JSON; `indices` are 1-based on disk and 0-based in
/// memory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knowledgebase {
    pub schema_version: u32,
    pub dataset_id: String,
    pub seed: u64,
    pub k: usize,
    pub d: usize,
    pub classes: Vec<ClassKnowledge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassKnowledge {
    pub label: String,
    #[serde(with = "one_based")]
    pub indices: Vec<usize>,
    pub train_projections: Vec<IntervalVector>,
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(indices: &[usize], s: S) -> Result<S::Ok, S::Error> {
        let shifted: Vec<u64> = indices.iter().map(|&i| i as u64 + 1).collect();
        shifted.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let raw = Vec::<u64>::deserialize(d)?;
        raw.into_iter()
            .map(|i| {
                if i == 0 {
                    Err(serde::de::Error::custom("feature indices are 1-based"))
                } else {
                    Ok(i as usize - 1)
                }
            })
            .collect()
    }
}

/// A knowledgebase plus per-class clustering diagnostics (class order
/// matches `kb.classes`).
#[derive(Debug, Clone)]
pub struct BuildOutcome {
    pub kb: Knowledgebase,
    pub class_selection: Vec<SelectionResult>,
}

/// Run per-class selection over a training matrix and assemble the
/// knowledgebase. Class runs are independent and execute in parallel
/// when the `parallel` feature is on; each class derives its own
/// clustering seed from `seed` and its class index, so the result does
/// not depend on scheduling.
pub fn build_knowledgebase(
    train: &IntervalFeatureMatrix,
    k: usize,
    seed: u64,
    dataset_id: &str,
) -> Result<BuildOutcome> {
    if k > train.n_features() {
        return Err(Error::config(format!(
            "K = {k} exceeds the {} features in the dataset",
            train.n_features()
        )));
    }
    let subs = transpose_by_class(train);
    let results: Vec<Result<SelectionResult>> = par::map_slice(&subs, |sub| {
        let class_seed = seeding::derive_seed(seed, Domain::Selection, 0, k, sub.class_index);
        let mut cfg = KMeansConfig::new(k, class_seed);
        cfg.max_iterations = crate::clustering::DEFAULT_MAX_ITERATIONS;
        select_class_features(&sub.features, &cfg)
    });
    let mut classes = Vec::with_capacity(subs.len());
    let mut class_selection = Vec::with_capacity(subs.len());
    for (sub, result) in subs.iter().zip(results) {
        let result = result?;
        let members = train.class_members(sub.class_index);
        let train_projections = members
            .iter()
            .map(|&i| project(train.sample(i), &result.indices))
            .collect();
        classes.push(ClassKnowledge {
            label: train.class_name(sub.class_index).to_string(),
            indices: result.indices.clone(),
            train_projections,
        });
        class_selection.push(result);
    }
    Ok(BuildOutcome {
        kb: Knowledgebase {
            schema_version: KNOWLEDGEBASE_SCHEMA_VERSION,
            dataset_id: dataset_id.to_string(),
            seed,
            k,
            d: train.n_features(),
            classes,
        },
        class_selection,
    })
}

pub fn save_knowledgebase(kb: &Knowledgebase, writer: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(writer, kb)
        .map_err(|e| Error::format(format!("cannot write knowledgebase: {e}")))
}

pub fn load_knowledgebase(reader: impl Read) -> Result<Knowledgebase> {
    let kb: Knowledgebase = serde_json::from_reader(reader)
        .map_err(|e| Error::format(format!("malformed knowledgebase: {e}")))?;
    validate_knowledgebase(&kb)?;
    Ok(kb)
}

fn validate_knowledgebase(kb: &Knowledgebase) -> Result<()> {
    if kb.schema_version != KNOWLEDGEBASE_SCHEMA_VERSION {
        return Err(Error::validation(format!(
            "knowledgebase schema version {} is not supported (expected {})",
            kb.schema_version, KNOWLEDGEBASE_SCHEMA_VERSION
        )));
    }
    if kb.classes.is_empty() {
        return Err(Error::validation(
            "knowledgebase has no classes".to_string(),
        ));
    }
    for class in &kb.classes {
        if class.indices.len() != kb.k {
            return Err(Error::validation(format!(
                "class '{}' stores {} indices, expected K = {}",
                class.label,
                class.indices.len(),
                kb.k
            )));
        }
        for (i, &idx) in class.indices.iter().enumerate() {
            if idx >= kb.d {
                return Err(Error::validation(format!(
                    "class '{}' index {} out of range for d = {}",
                    class.label,
                    idx + 1,
                    kb.d
                )));
            }
            if class.indices[..i].contains(&idx) {
                return Err(Error::validation(format!(
                    "class '{}' repeats feature index {}",
                    class.label,
                    idx + 1
                )));
            }
        }
        if class.train_projections.is_empty() {
            return Err(Error::validation(format!(
                "class '{}' has no training projections",
                class.label
            )));
        }
        if class.train_projections.iter().any(|p| p.len() != kb.k) {
            return Err(Error::validation(format!(
                "class '{}' has a projection whose width differs from K = {}",
                class.label, kb.k
            )));
        }
    }
    Ok(())
}
