//! The experiment grid: split fractions crossed with K values and
//! repetitions, comparing accuracy with and without feature selection.
//!
//! Cells are deterministic functions of the master seed and their
//! coordinates, and independent of each other, so the grid runs in
//! parallel and is reduced in a fixed order; two runs with the same
//! configuration emit byte-identical reports.

use std::fmt::Write as _;

use crate::classify::{
    accuracy, classify_with_selection, classify_without_selection, ClassifierConfig, ClassifierKind,
};
use crate::dataset::{stratified_split, IntervalFeatureMatrix};
use crate::error::{Error, Result};
use crate::interval::IntervalVector;
use crate::par;
use crate::seeding::{derive_seed, Domain};
use crate::selection::build_knowledgebase;

pub const DEFAULT_FRACTIONS: [f64; 5] = [0.3, 0.4, 0.5, 0.6, 0.7];

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub classifier: ClassifierConfig,
    pub fractions: Vec<f64>,
    pub k_values: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// The full default grid for a dataset: standard fractions, K from
    /// 2 to d - 1, one repetition.
    pub fn default_grid(ifm: &IntervalFeatureMatrix, classifier: ClassifierConfig) -> Self {
        ExperimentConfig {
            classifier,
            fractions: DEFAULT_FRACTIONS.to_vec(),
            k_values: (2..ifm.n_features()).collect(),
            repetitions: 1,
            seed: 42,
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        self.classifier.validate()?;
        if self.fractions.is_empty() {
            return Err(Error::config("no split fractions given".to_string()));
        }
        for &f in &self.fractions {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::config(format!(
                    "split fractions must lie in (0, 1), got {f}"
                )));
            }
        }
        if self.k_values.is_empty() {
            return Err(Error::config(format!(
                "no K values to sweep; the dataset has {d} features so K may range over 2..={}",
                d.saturating_sub(1)
            )));
        }
        for &k in &self.k_values {
            if k < 2 || k + 1 > d {
                return Err(Error::config(format!(
                    "K must lie in 2..={} for a {d}-feature dataset, got {k}",
                    d.saturating_sub(1)
                )));
            }
        }
        if self.repetitions == 0 {
            return Err(Error::config("need at least one repetition".to_string()));
        }
        Ok(())
    }
}

/// One grid cell: a (fraction, K, repetition) coordinate with both
/// accuracies, the per-class selected indices (0-based), and whether
/// every class's clustering reached its fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub fraction_index: usize,
    pub fraction: f64,
    pub k: usize,
    pub repetition: usize,
    pub wfs_accuracy: f64,
    pub wofs_accuracy: f64,
    pub converged: bool,
    pub selected: Vec<(String, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub dataset_id: String,
    pub d: usize,
    pub classifier: ClassifierKind,
    pub beta: f64,
    pub seed: u64,
    pub repetitions: usize,
    pub rows: Vec<CellResult>,
}

pub fn classifier_label(kind: ClassifierKind) -> &'static str {
    match kind {
        ClassifierKind::C1 => "c1",
        ClassifierKind::C2 => "c2",
    }
}

/// Run the full grid over a dataset.
///
/// The split for a cell depends only on (fraction, repetition), so the
/// no-selection baseline is computed once per split and shared by all
/// K values of that split. Selection seeds additionally mix in K.
pub fn run_experiment(
    ifm: &IntervalFeatureMatrix,
    dataset_id: &str,
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport> {
    cfg.validate(ifm.n_features())?;
    let units: Vec<(usize, usize)> = (0..cfg.fractions.len())
        .flat_map(|f| (0..cfg.repetitions).map(move |rep| (f, rep)))
        .collect();
    let per_unit: Vec<Result<Vec<CellResult>>> = par::map_slice(&units, |&(f_idx, rep)| {
        run_unit(ifm, dataset_id, cfg, f_idx, rep)
    });
    let mut rows = Vec::with_capacity(units.len() * cfg.k_values.len());
    for unit in per_unit {
        rows.extend(unit?);
    }
    rows.sort_by(|a, b| {
        (a.fraction_index, a.k, a.repetition).cmp(&(b.fraction_index, b.k, b.repetition))
    });
    Ok(ExperimentReport {
        dataset_id: dataset_id.to_string(),
        d: ifm.n_features(),
        classifier: cfg.classifier.kind,
        beta: cfg.classifier.beta,
        seed: cfg.seed,
        repetitions: cfg.repetitions,
        rows,
    })
}

/// All K cells sharing one (fraction, repetition) split.
fn run_unit(
    ifm: &IntervalFeatureMatrix,
    dataset_id: &str,
    cfg: &ExperimentConfig,
    f_idx: usize,
    rep: usize,
) -> Result<Vec<CellResult>> {
    let fraction = cfg.fractions[f_idx];
    let split_seed = derive_seed(cfg.seed, Domain::Split, f_idx, 0, rep);
    let pair = stratified_split(ifm, fraction, split_seed)?;
    let train_by_class: Vec<Vec<IntervalVector>> = (0..pair.train.n_classes())
        .map(|j| {
            pair.train
                .class_members(j)
                .iter()
                .map(|&i| pair.train.sample(i).clone())
                .collect()
        })
        .collect();
    let truth: Vec<usize> = (0..pair.test.n_samples())
        .map(|i| pair.test.class_of(i))
        .collect();

    let wofs_predictions = pair
        .test
        .samples()
        .iter()
        .map(|q| {
            classify_without_selection(q, &train_by_class, &cfg.classifier).map(|p| p.class_index)
        })
        .collect::<Result<Vec<_>>>()?;
    let wofs_accuracy = accuracy(&wofs_predictions, &truth)?;

    let mut cells = Vec::with_capacity(cfg.k_values.len());
    for &k in &cfg.k_values {
        let kb_seed = derive_seed(cfg.seed, Domain::Selection, f_idx, k, rep);
        let built = build_knowledgebase(&pair.train, k, kb_seed, dataset_id)?;
        let predictions = pair
            .test
            .samples()
            .iter()
            .map(|q| classify_with_selection(q, &built.kb, &cfg.classifier).map(|p| p.class_index))
            .collect::<Result<Vec<_>>>()?;
        let wfs_accuracy = accuracy(&predictions, &truth)?;
        cells.push(CellResult {
            fraction_index: f_idx,
            fraction,
            k,
            repetition: rep,
            wfs_accuracy,
            wofs_accuracy,
            converged: built.class_selection.iter().all(|s| s.converged),
            selected: built
                .kb
                .classes
                .iter()
                .map(|c| (c.label.clone(), c.indices.clone()))
                .collect(),
        });
    }
    Ok(cells)
}

/// The best cell of a fraction: highest accuracy with selection,
/// ties to the lowest K then the lowest repetition.
fn best_cell(report: &ExperimentReport, f_idx: usize) -> Option<&CellResult> {
    report
        .rows
        .iter()
        .filter(|r| r.fraction_index == f_idx)
        .fold(None, |best: Option<&CellResult>, row| match best {
            Some(b) if row.wfs_accuracy <= b.wfs_accuracy => Some(b),
            _ => Some(row),
        })
}

/// Fixed-width text: one row per fraction showing its best cell, with
/// the no-selection baseline of the same split alongside.
pub fn render_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dataset: {}  classifier: {}  beta: {}  seed: {}  repetitions: {}",
        report.dataset_id,
        classifier_label(report.classifier),
        report.beta,
        report.seed,
        report.repetitions
    );
    let _ = writeln!(
        out,
        "{:<12}{:>16}{:>15}{:>17}{:>16}",
        "Train-Test", "#Features(WFS)", "Accuracy(WFS)", "#Features(WoFS)", "Accuracy(WoFS)"
    );
    let mut fraction_indices: Vec<usize> = report.rows.iter().map(|r| r.fraction_index).collect();
    fraction_indices.dedup();
    for f_idx in fraction_indices {
        let best = best_cell(report, f_idx).expect("every fraction has rows");
        let train_pct = (best.fraction * 100.0).round() as u32;
        let _ = writeln!(
            out,
            "{:<12}{:>16}{:>15.2}{:>17}{:>16.2}",
            format!("{}-{}", train_pct, 100 - train_pct),
            best.k,
            best.wfs_accuracy * 100.0,
            report.d,
            best.wofs_accuracy * 100.0
        );
    }
    out
}

/// All raw cells as CSV. Selected indices are 1-based, formatted
/// `label=i+j+...` and joined with `;` across classes.
pub fn render_csv(report: &ExperimentReport) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let to_fmt = |e: csv::Error| Error::format(format!("cannot render csv: {e}"));
    writer
        .write_record([
            "fraction",
            "k",
            "repetition",
            "wfs_accuracy",
            "wofs_accuracy",
            "converged",
            "selected_indices",
        ])
        .map_err(to_fmt)?;
    for row in &report.rows {
        let selected = row
            .selected
            .iter()
            .map(|(label, indices)| {
                let list = indices
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("+");
                format!("{label}={list}")
            })
            .collect::<Vec<_>>()
            .join(";");
        writer
            .write_record([
                row.fraction.to_string(),
                row.k.to_string(),
                row.repetition.to_string(),
                row.wfs_accuracy.to_string(),
                row.wofs_accuracy.to_string(),
                row.converged.to_string(),
                selected,
            ])
            .map_err(to_fmt)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::format(format!("cannot render csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::format(format!("csv is not utf-8: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset;

    fn quick_cfg(kind: ClassifierKind) -> ExperimentConfig {
        ExperimentConfig {
            classifier: ClassifierConfig::new(kind),
            fractions: vec![0.3, 0.5],
            k_values: vec![2, 3],
            repetitions: 2,
            seed: 7,
        }
    }

    #[test]
    fn grid_shape_is_fractions_by_k_by_repetitions() {
        let m = dataset::iris();
        let report = run_experiment(&m, "iris", &quick_cfg(ClassifierKind::C1)).unwrap();
        assert_eq!(report.rows.len(), 2 * 2 * 2);
        let mut coords: Vec<(usize, usize, usize)> = report
            .rows
            .iter()
            .map(|r| (r.fraction_index, r.k, r.repetition))
            .collect();
        coords.dedup();
        assert_eq!(
            coords.len(),
            8,
            "every configured cell present exactly once"
        );
        for row in &report.rows {
            assert!((0.0..=1.0).contains(&row.wfs_accuracy));
            assert!((0.0..=1.0).contains(&row.wofs_accuracy));
            assert_eq!(row.selected.len(), 3);
            for (_, indices) in &row.selected {
                assert_eq!(indices.len(), row.k);
            }
        }
    }

    #[test]
    fn baseline_is_shared_across_k_within_a_split() {
        let m = dataset::iris();
        let report = run_experiment(&m, "iris", &quick_cfg(ClassifierKind::C2)).unwrap();
        for a in &report.rows {
            for b in &report.rows {
                if (a.fraction_index, a.repetition) == (b.fraction_index, b.repetition) {
                    assert_eq!(a.wofs_accuracy, b.wofs_accuracy);
                }
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let m = dataset::iris();
        let cfg = quick_cfg(ClassifierKind::C2);
        let a = run_experiment(&m, "iris", &cfg).unwrap();
        let b = run_experiment(&m, "iris", &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_table(&a), render_table(&b));
        assert_eq!(render_csv(&a).unwrap(), render_csv(&b).unwrap());
    }

    #[test]
    fn table_shows_one_row_per_fraction() {
        let m = dataset::iris();
        let report = run_experiment(&m, "iris", &quick_cfg(ClassifierKind::C1)).unwrap();
        let table = render_table(&report);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(
            lines.len(),
            2 + 2,
            "config line, header, one row per fraction"
        );
        assert!(lines[1].contains("Train-Test"));
        assert!(lines[2].starts_with("30-70"));
        assert!(lines[3].starts_with("50-50"));
        // the no-selection column always shows all d features
        assert!(lines[2].split_whitespace().any(|t| t == "4"));
    }

    #[test]
    fn csv_parses_back_with_a_standard_reader() {
        let m = dataset::iris();
        let report = run_experiment(&m, "iris", &quick_cfg(ClassifierKind::C1)).unwrap();
        let text = render_csv(&report).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(
            reader.headers().unwrap().iter().collect::<Vec<_>>(),
            vec![
                "fraction",
                "k",
                "repetition",
                "wfs_accuracy",
                "wofs_accuracy",
                "converged",
                "selected_indices"
            ]
        );
        assert_eq!(reader.records().count(), report.rows.len());
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let m = dataset::iris();
        let mut cfg = quick_cfg(ClassifierKind::C1);
        cfg.k_values = vec![1];
        assert!(run_experiment(&m, "iris", &cfg).is_err());
        cfg.k_values = vec![4]; // d = 4, so K must stay below d
        assert!(run_experiment(&m, "iris", &cfg).is_err());
        cfg.k_values = vec![2];
        cfg.fractions = vec![1.0];
        assert!(run_experiment(&m, "iris", &cfg).is_err());
        cfg.fractions = vec![0.5];
        cfg.repetitions = 0;
        assert!(run_experiment(&m, "iris", &cfg).is_err());
        cfg.repetitions = 1;
        cfg.classifier.beta = -1.0;
        assert!(run_experiment(&m, "iris", &cfg).is_err());
    }

    #[test]
    fn default_grid_covers_two_to_d_minus_one() {
        let m = dataset::iris();
        let cfg = ExperimentConfig::default_grid(&m, ClassifierConfig::new(ClassifierKind::C1));
        assert_eq!(cfg.k_values, vec![2, 3]);
        assert_eq!(cfg.fractions, DEFAULT_FRACTIONS.to_vec());
    }
}
