//! The m-way claim-and-score protocol with two symbolic
//! nearest-neighbour classifiers.
//!
//! A query claims membership of every class in turn: it is projected
//! onto that class's selected features and scored against the class's
//! projected training samples. The class with the maximum score wins,
//! ties going to the lowest class index.

use crate::error::{Error, Result};
use crate::interval::{ssk, Interval, IntervalVector, UnitRatio};
use crate::selection::{project, Knowledgebase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    C1,
    C2,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    /// Gap-decay rate for C-2's rejected decay branch; see `c2_score`.
    /// Must be positive and finite.
    pub beta: f64,
}

pub const DEFAULT_BETA: f64 = 1.0;

impl ClassifierConfig {
    pub fn new(kind: ClassifierKind) -> Self {
        ClassifierConfig {
            kind,
            beta: DEFAULT_BETA,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::config(format!(
                "beta must be positive and finite, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Nearest-neighbour score of a projected query against one class:
/// the maximum kernel similarity over the class's training
/// projections.
pub fn c1_score(query_proj: &[Interval], class_train: &[IntervalVector]) -> Result<UnitRatio> {
    if class_train.is_empty() {
        return Err(Error::config("class has no training samples".to_string()));
    }
    let best = class_train
        .iter()
        .map(|t| ssk(query_proj, t).get())
        .fold(0.0f64, f64::max);
    Ok(UnitRatio::new(best))
}

/// Nearest-neighbour score under the per-feature overlap measure: the
/// maximum over training items of the mean per-feature similarity.
///
/// Each feature pair scores intersection length over hull length
/// (interval Jaccard; identical point intervals score 1). Disjoint
/// pairs score 0. An earlier variant scored disjoint pairs
/// `1/(1 + beta*gap)`, but any branch that decays from 1 with the gap
/// ranks barely separated intervals above strongly overlapping ones
/// and misclassifies neighbouring classes wholesale, so it was
/// dropped. `beta` remains part of the configuration surface and is
/// validated, but no longer influences the score.
pub fn c2_score(
    query_proj: &[Interval],
    class_train: &[IntervalVector],
    beta: f64,
) -> Result<UnitRatio> {
    if class_train.is_empty() {
        return Err(Error::config("class has no training samples".to_string()));
    }
    ClassifierConfig {
        kind: ClassifierKind::C2,
        beta,
    }
    .validate()?;
    let inv = 1.0 / query_proj.len() as f64;
    let best = class_train
        .iter()
        .map(|t| {
            query_proj
                .iter()
                .zip(t)
                .map(|(&a, &b)| overlap_ratio(a, b))
                .sum::<f64>()
                * inv
        })
        .fold(0.0f64, f64::max);
    Ok(UnitRatio::new(best))
}

/// Intersection length over hull length, 1 when both intervals are the
/// same single point, 0 when they do not intersect.
fn overlap_ratio(a: Interval, b: Interval) -> f64 {
    let inter = a.hi().min(b.hi()) - a.lo().max(b.lo());
    if inter < 0.0 {
        return 0.0;
    }
    let hull = a.hi().max(b.hi()) - a.lo().min(b.lo());
    if hull == 0.0 {
        1.0
    } else {
        inter / hull
    }
}

/// The verdict for one query: per-class scores in class order and the
/// argmax class (ties to the lowest index).
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub class_index: usize,
    pub scores: Vec<f64>,
}

fn argmax_class(scores: Vec<f64>) -> Prediction {
    let mut best = 0;
    for (j, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = j;
        }
    }
    Prediction {
        class_index: best,
        scores,
    }
}

fn score_one(
    query_proj: &[Interval],
    class_train: &[IntervalVector],
    cfg: &ClassifierConfig,
) -> Result<f64> {
    let score = match cfg.kind {
        ClassifierKind::C1 => c1_score(query_proj, class_train)?,
        ClassifierKind::C2 => c2_score(query_proj, class_train, cfg.beta)?,
    };
    Ok(score.get())
}

/// Classify a full-width query against a knowledgebase: the query is
/// projected per class onto that class's own indices before scoring.
pub fn classify_with_selection(
    query: &[Interval],
    kb: &Knowledgebase,
    cfg: &ClassifierConfig,
) -> Result<Prediction> {
    cfg.validate()?;
    if query.len() != kb.d {
        return Err(Error::validation(format!(
            "query has {} features but the knowledgebase expects {}",
            query.len(),
            kb.d
        )));
    }
    let scores = kb
        .classes
        .iter()
        .map(|class| {
            let proj = project(query, &class.indices);
            score_one(&proj, &class.train_projections, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(argmax_class(scores))
}

/// Classify using all original features against per-class training
/// samples (the no-selection baseline).
pub fn classify_without_selection(
    query: &[Interval],
    train_by_class: &[Vec<IntervalVector>],
    cfg: &ClassifierConfig,
) -> Result<Prediction> {
    cfg.validate()?;
    let scores = train_by_class
        .iter()
        .map(|class_train| score_one(query, class_train, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(argmax_class(scores))
}

/// Fraction of predictions matching the truth.
pub fn accuracy(predictions: &[usize], truth: &[usize]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::validation("no predictions to score".to_string()));
    }
    if predictions.len() != truth.len() {
        return Err(Error::validation(format!(
            "{} predictions against {} truth labels",
            predictions.len(),
            truth.len()
        )));
    }
    let correct = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    Ok(correct as f64 / predictions.len() as f64)
}
