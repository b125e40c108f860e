//! K-Means over interval feature rows with the similarity kernel as
//! the affinity measure.
//!
//! Assignment maximizes `ssk(feature, centroid)`; centroids are
//! component-wise means of member bounds, which keeps every centroid a
//! valid interval vector. Convergence means the assignment vector
//! reached a fixed point; the kernel/mean pair admits no descent
//! argument, so termination is enforced by the iteration cap.

use rand::Rng;

use crate::error::{Error, Result};
use crate::interval::{ssk, Interval, IntervalVector};
use crate::seeding;

/// Controls for one clustering run.
#[derive(Debug, Clone)]
pub struct KMeansConfig {
    pub k: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

pub const DEFAULT_MAX_ITERATIONS: usize = 100;

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansConfig {
            k,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed,
        }
    }
}

/// A completed clustering of `n` feature rows into `k` groups.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<IntervalVector>,
    /// Cluster index per feature row, each in `0..k`; no cluster empty.
    pub assignments: Vec<usize>,
    pub iterations_run: usize,
    pub converged: bool,
}

impl ClusterModel {
    /// Feature-row indices of cluster `q`, ascending.
    pub fn members(&self, q: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&a| self.assignments[a] == q)
            .collect()
    }
}

/// Cluster the given feature rows.
///
/// Initial centroids are `k` distinct rows drawn without replacement
/// from a seeded generator. Each iteration reassigns every row to its
/// most similar centroid (ties to the lowest cluster index) and
/// recomputes centroids; a cluster left empty by an update has its
/// centroid reset to the row least similar to all current centroids
/// within the same iteration. If duplicate rows leave a cluster empty
/// at the fixed point, membership is normalized afterwards by moving
/// the least representative row out of the largest cluster, so the
/// returned model never contains an empty cluster.
pub fn interval_kmeans(features: &[IntervalVector], cfg: &KMeansConfig) -> Result<ClusterModel> {
    let n = features.len();
    if cfg.k < 2 {
        return Err(Error::config(format!(
            "K must be at least 2, got {}",
            cfg.k
        )));
    }
    if cfg.k > n {
        return Err(Error::config(format!(
            "K = {} exceeds the {n} features available",
            cfg.k
        )));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::config("need at least one iteration".to_string()));
    }
    let dim = features[0].len();
    assert!(
        features.iter().all(|f| f.len() == dim) && dim > 0,
        "feature rows must share a positive length"
    );

    let mut centroids = init_centroids(features, cfg);
    let mut prev: Option<Vec<usize>> = None;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        iterations += 1;
        let asg = assign(features, &centroids);
        if prev.as_ref() == Some(&asg) {
            converged = true;
            break;
        }
        centroids = update_centroids(features, &asg, cfg.k);
        prev = Some(asg);
    }
    let mut assignments = prev.expect("at least one iteration ran");
    if normalize_memberships(features, &mut assignments, cfg.k, &centroids) {
        centroids = update_centroids(features, &assignments, cfg.k);
    }
    Ok(ClusterModel {
        k: cfg.k,
        centroids,
        assignments,
        iterations_run: iterations,
        converged,
    })
}

fn init_centroids(features: &[IntervalVector], cfg: &KMeansConfig) -> Vec<IntervalVector> {
    let mut rng = seeding::stream_rng(
        cfg.seed,
        seeding::cell_stream(seeding::Domain::Selection, 0, 0, 0),
    );
    let mut order: Vec<usize> = (0..features.len()).collect();
    for i in 0..cfg.k {
        let pick = rng.gen_range(i..order.len());
        order.swap(i, pick);
    }
    order[..cfg.k]
        .iter()
        .map(|&i| features[i].clone())
        .collect()
}

fn assign(features: &[IntervalVector], centroids: &[IntervalVector]) -> Vec<usize> {
    features
        .iter()
        .map(|f| {
            let mut best = 0;
            let mut best_sim = f64::NEG_INFINITY;
            for (q, c) in centroids.iter().enumerate() {
                let s = ssk(f, c).get();
                if s > best_sim {
                    best_sim = s;
                    best = q;
                }
            }
            best
        })
        .collect()
}

/// Mean-of-bounds centroids; empty clusters are repaired in cluster
/// order by resetting their centroid to the row with the lowest
/// maximum similarity to all centroids fixed so far.
fn update_centroids(
    features: &[IntervalVector],
    assignments: &[usize],
    k: usize,
) -> Vec<IntervalVector> {
    let dim = features[0].len();
    let mut centroids: Vec<Option<IntervalVector>> = vec![None; k];
    for (q, slot) in centroids.iter_mut().enumerate() {
        let members: Vec<&IntervalVector> = assignments
            .iter()
            .zip(features)
            .filter(|(&a, _)| a == q)
            .map(|(_, f)| f)
            .collect();
        if members.is_empty() {
            continue;
        }
        let inv = 1.0 / members.len() as f64;
        let centroid = (0..dim)
            .map(|i| {
                let lo = members.iter().map(|m| m[i].lo()).sum::<f64>() * inv;
                let hi = members.iter().map(|m| m[i].hi()).sum::<f64>() * inv;
                Interval::from_sorted_bounds(lo.min(hi), hi.max(lo))
            })
            .collect();
        *slot = Some(centroid);
    }
    let mut fixed: Vec<IntervalVector> = centroids.iter().flatten().cloned().collect();
    centroids
        .into_iter()
        .map(|c| match c {
            Some(c) => c,
            None => {
                let farthest = (0..features.len())
                    .min_by(|&a, &b| {
                        let ma = max_sim(&features[a], &fixed);
                        let mb = max_sim(&features[b], &fixed);
                        ma.partial_cmp(&mb).unwrap().then(a.cmp(&b))
                    })
                    .expect("at least one feature");
                fixed.push(features[farthest].clone());
                features[farthest].clone()
            }
        })
        .collect()
}

fn max_sim(f: &IntervalVector, centroids: &[IntervalVector]) -> f64 {
    centroids
        .iter()
        .map(|c| ssk(f, c).get())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Duplicate rows can tie their way into one cluster and starve
/// another even at the assignment fixed point. Move the least
/// representative member of the largest cluster into each starved one;
/// returns whether anything moved.
fn normalize_memberships(
    features: &[IntervalVector],
    assignments: &mut [usize],
    k: usize,
    centroids: &[IntervalVector],
) -> bool {
    let mut counts = vec![0usize; k];
    for &a in assignments.iter() {
        counts[a] += 1;
    }
    let mut moved = false;
    for q in 0..k {
        if counts[q] > 0 {
            continue;
        }
        let donor = (0..k)
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
            .expect("k >= 2");
        debug_assert!(
            counts[donor] >= 2,
            "pigeonhole: some cluster must be splittable"
        );
        let victim = (0..features.len())
            .filter(|&i| assignments[i] == donor)
            .min_by(|&a, &b| {
                let sa = ssk(&features[a], &centroids[donor]).get();
                let sb = ssk(&features[b], &centroids[donor]).get();
                sa.partial_cmp(&sb).unwrap().then(a.cmp(&b))
            })
            .expect("donor cluster is non-empty");
        assignments[victim] = q;
        counts[donor] -= 1;
        counts[q] += 1;
        moved = true;
    }
    moved
}
