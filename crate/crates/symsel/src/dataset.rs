//! Labeled interval feature matrices: CSV ingestion, per-class
//! transposition, stratified splitting, and synthetic data with
//! planted informative features.
//!
//! The CSV schema is `f1_lo,f1_hi,...,fd_lo,fd_hi,label` with an
//! optional header, `#` comment lines, UTF-8 text and `.` as the
//! decimal separator. The feature count is inferred from the first
//! data row.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalVector};
use crate::seeding::{self, Domain};

/// N labeled samples of d interval features each.
///
/// Class identity is positional: `class_names` holds the distinct
/// labels in first-appearance order and `labels[i]` indexes into it.
/// At least two classes, every class non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFeatureMatrix {
    samples: Vec<IntervalVector>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    d: usize,
}

impl IntervalFeatureMatrix {
    pub fn new(samples: Vec<IntervalVector>, label_strings: Vec<String>) -> Result<Self> {
        let class_names = first_appearance_order(&label_strings);
        Self::with_class_order(samples, label_strings, class_names)
    }

    /// Like `new` but with a caller-imposed class order; every name
    /// must actually occur. Used by splitting so that train and test
    /// share the source matrix's class numbering.
    pub(crate) fn with_class_order(
        samples: Vec<IntervalVector>,
        label_strings: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::validation("matrix has no samples"));
        }
        if samples.len() != label_strings.len() {
            return Err(Error::validation(format!(
                "{} samples but {} labels",
                samples.len(),
                label_strings.len()
            )));
        }
        let d = samples[0].len();
        if d == 0 {
            return Err(Error::validation("samples must have at least one feature"));
        }
        if let Some(i) = samples.iter().position(|s| s.len() != d) {
            return Err(Error::validation(format!(
                "sample {} has {} features, expected {d}",
                i + 1,
                samples[i].len()
            )));
        }
        let labels = label_strings
            .iter()
            .map(|l| {
                class_names
                    .iter()
                    .position(|c| c == l)
                    .ok_or_else(|| Error::validation(format!("label '{l}' not in class list")))
            })
            .collect::<Result<Vec<_>>>()?;
        if class_names.len() < 2 {
            return Err(Error::validation(
                "need at least two classes, found one".to_string(),
            ));
        }
        for (j, name) in class_names.iter().enumerate() {
            if !labels.contains(&j) {
                return Err(Error::validation(format!("class '{name}' has no samples")));
            }
        }
        Ok(IntervalFeatureMatrix {
            samples,
            labels,
            class_names,
            d,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn n_features(&self) -> usize {
        self.d
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn samples(&self) -> &[IntervalVector] {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> &IntervalVector {
        &self.samples[i]
    }

    /// Class index of sample `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn class_name(&self, j: usize) -> &str {
        &self.class_names[j]
    }

    /// Sample indices of class `j`, ascending.
    pub fn class_members(&self, j: usize) -> Vec<usize> {
        (0..self.samples.len())
            .filter(|&i| self.labels[i] == j)
            .collect()
    }
}

fn first_appearance_order(labels: &[String]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for l in labels {
        if !names.iter().any(|n| n == l) {
            names.push(l.clone());
        }
    }
    names
}

/// One class's features transposed: row `a` holds feature `a` across
/// that class's samples, in sample order.
#[derive(Debug, Clone)]
pub struct ClassSubMatrix {
    pub class_index: usize,
    /// d rows, each of length n_j.
    pub features: Vec<IntervalVector>,
}

impl ClassSubMatrix {
    pub fn n_class_samples(&self) -> usize {
        self.features[0].len()
    }
}

/// Split a matrix into per-class transposed sub-matrices, one per
/// class in class order.
pub fn transpose_by_class(ifm: &IntervalFeatureMatrix) -> Vec<ClassSubMatrix> {
    (0..ifm.n_classes())
        .map(|j| {
            let members = ifm.class_members(j);
            let features = (0..ifm.n_features())
                .map(|a| members.iter().map(|&i| ifm.sample(i)[a]).collect())
                .collect();
            ClassSubMatrix {
                class_index: j,
                features,
            }
        })
        .collect()
}

/// A stratified train/test partition of a source matrix.
#[derive(Debug, Clone)]
pub struct SplitPair {
    pub train: IntervalFeatureMatrix,
    pub test: IntervalFeatureMatrix,
    pub train_fraction: f64,
    pub seed: u64,
}

/// Per class, `round(n_j * fraction)` samples go to train (half-up,
/// clamped so both sides keep at least one sample); the choice is
/// uniform without replacement from a generator seeded by `seed`.
/// Original sample order is preserved on both sides and both sides
/// inherit the source class numbering.
pub fn stratified_split(
    ifm: &IntervalFeatureMatrix,
    train_fraction: f64,
    seed: u64,
) -> Result<SplitPair> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::config(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut rng = seeding::stream_rng(seed, seeding::cell_stream(Domain::Split, 0, 0, 0));
    let mut in_train = vec![false; ifm.n_samples()];
    for j in 0..ifm.n_classes() {
        let mut members = ifm.class_members(j);
        let n_j = members.len();
        if n_j < 2 {
            return Err(Error::validation(format!(
                "class '{}' has {n_j} sample(s); need at least 2 to split",
                ifm.class_name(j)
            )));
        }
        let raw = (n_j as f64 * train_fraction + 0.5).floor() as usize;
        let n_train = raw.clamp(1, n_j - 1);
        // partial Fisher-Yates: the first n_train slots end up a
        // uniform sample without replacement
        for i in 0..n_train {
            let pick = rng.gen_range(i..n_j);
            members.swap(i, pick);
        }
        for &i in &members[..n_train] {
            in_train[i] = true;
        }
    }
    let collect = |keep: bool| -> (Vec<IntervalVector>, Vec<String>) {
        let mut samples = Vec::new();
        let mut labels = Vec::new();
        for (i, &flag) in in_train.iter().enumerate() {
            if flag == keep {
                samples.push(ifm.sample(i).clone());
                labels.push(ifm.class_name(ifm.class_of(i)).to_string());
            }
        }
        (samples, labels)
    };
    let (train_s, train_l) = collect(true);
    let (test_s, test_l) = collect(false);
    let names = ifm.class_names().to_vec();
    Ok(SplitPair {
        train: IntervalFeatureMatrix::with_class_order(train_s, train_l, names.clone())?,
        test: IntervalFeatureMatrix::with_class_order(test_s, test_l, names)?,
        train_fraction,
        seed,
    })
}

/// Controls for `synthesize_dataset`.
#[derive(Debug, Clone)]
pub struct SynthesisConfig {
    pub n_classes: usize,
    pub n_per_class: usize,
    pub n_features: usize,
    pub informative_per_class: usize,
    pub separation: f64,
    pub noise_width: f64,
    pub seed: u64,
}

/// A synthesized matrix plus the planted informative feature indices
/// per class (0-based).
#[derive(Debug, Clone)]
pub struct SynthesizedDataset {
    pub matrix: IntervalFeatureMatrix,
    pub planted: Vec<Vec<usize>>,
}

/// Build a matrix where class `j`'s informative features are intervals
/// of width `noise_width` centered near `(j + 1) * separation`, while
/// every other feature is centered uniformly in [0, 1). The planted
/// index blocks are disjoint across classes, which requires
/// `n_classes * informative_per_class <= n_features`. A separation of
/// 0 collapses the planted centers and serves as a negative control.
pub fn synthesize_dataset(cfg: &SynthesisConfig) -> Result<SynthesizedDataset> {
    if cfg.n_classes < 2 {
        return Err(Error::config("need at least two classes".to_string()));
    }
    if cfg.n_per_class == 0 || cfg.n_features == 0 || cfg.informative_per_class == 0 {
        return Err(Error::config(
            "samples per class, features, and informative count must be positive".to_string(),
        ));
    }
    if cfg.n_classes * cfg.informative_per_class > cfg.n_features {
        return Err(Error::config(format!(
            "{} classes x {} informative features exceed {} total features",
            cfg.n_classes, cfg.informative_per_class, cfg.n_features
        )));
    }
    if !(cfg.separation.is_finite() && cfg.separation >= 0.0) {
        return Err(Error::config(format!(
            "separation must be finite and non-negative, got {}",
            cfg.separation
        )));
    }
    if !(cfg.noise_width.is_finite() && cfg.noise_width >= 0.0) {
        return Err(Error::config(format!(
            "noise width must be finite and non-negative, got {}",
            cfg.noise_width
        )));
    }

    let planted: Vec<Vec<usize>> = (0..cfg.n_classes)
        .map(|j| (j * cfg.informative_per_class..(j + 1) * cfg.informative_per_class).collect())
        .collect();
    let mut rng = seeding::stream_rng(cfg.seed, seeding::cell_stream(Domain::Synthesis, 0, 0, 0));
    let half = cfg.noise_width / 2.0;
    let mut samples = Vec::with_capacity(cfg.n_classes * cfg.n_per_class);
    let mut labels = Vec::with_capacity(cfg.n_classes * cfg.n_per_class);
    for (j, planted_j) in planted.iter().enumerate() {
        for _ in 0..cfg.n_per_class {
            let mut row = Vec::with_capacity(cfg.n_features);
            for f in 0..cfg.n_features {
                let center = if planted_j.contains(&f) {
                    (j + 1) as f64 * cfg.separation + rng.gen_range(-0.5..0.5) * cfg.noise_width
                } else {
                    rng.gen_range(0.0..1.0)
                };
                row.push(Interval::new(center - half, center + half)?);
            }
            samples.push(row);
            labels.push(format!("class_{}", j + 1));
        }
    }
    Ok(SynthesizedDataset {
        matrix: IntervalFeatureMatrix::new(samples, labels)?,
        planted,
    })
}

/// Sidecar text for a synthesized dataset: one `label: i,j,...` line
/// per class, feature indices 1-based.
pub fn format_planted_record(matrix: &IntervalFeatureMatrix, planted: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (j, indices) in planted.iter().enumerate() {
        let list = indices
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "{}: {list}", matrix.class_name(j));
    }
    out
}

/// Parse a labeled dataset from CSV text.
pub fn parse_dataset(reader: impl Read) -> Result<IntervalFeatureMatrix> {
    let rows = read_rows(reader)?;
    let mut samples = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    let mut d = None;
    for (line, fields) in rows {
        let n = fields.len();
        match d {
            None => {
                if n < 3 || n % 2 == 0 {
                    return Err(Error::format(format!(
                        "row {line}: expected an odd field count of at least 3 \
                         (lo/hi pairs plus a label), found {n}"
                    )));
                }
                d = Some((n - 1) / 2);
            }
            Some(d) => {
                if n != 2 * d + 1 {
                    return Err(Error::format(format!(
                        "row {line}: expected {} fields, found {n}",
                        2 * d + 1
                    )));
                }
            }
        }
        let label = fields[n - 1].trim();
        if label.is_empty() {
            return Err(Error::format(format!("row {line}: empty label")));
        }
        samples.push(parse_interval_fields(&fields[..n - 1], line)?);
        labels.push(label.to_string());
    }
    if samples.is_empty() {
        return Err(Error::format("no data rows".to_string()));
    }
    IntervalFeatureMatrix::new(samples, labels)
}

/// Parse a query file: rows of `2d` numeric fields, or the dataset
/// schema with a trailing label. All rows must agree with the first,
/// and labeled rows return their labels for scoring the predictions.
pub fn parse_queries(reader: impl Read) -> Result<(Vec<IntervalVector>, Option<Vec<String>>)> {
    let rows = read_rows(reader)?;
    let mut queries: Vec<IntervalVector> = Vec::with_capacity(rows.len());
    let mut labels = Vec::new();
    let mut labeled = None;
    for (line, fields) in rows {
        let n = fields.len();
        let has_label = n % 2 == 1;
        if n < 2 || (has_label && n < 3) {
            return Err(Error::format(format!(
                "row {line}: expected lo/hi pairs, found {n} field(s)"
            )));
        }
        match labeled {
            None => labeled = Some(has_label),
            Some(l) if l != has_label => {
                return Err(Error::format(format!(
                    "row {line}: mixes labeled and unlabeled rows"
                )));
            }
            _ => {}
        }
        let numeric = if has_label { n - 1 } else { n };
        if let Some(first) = queries.first() {
            let expect = 2 * first.len();
            if numeric != expect {
                return Err(Error::format(format!(
                    "row {line}: expected {expect} numeric fields, found {numeric}"
                )));
            }
        }
        queries.push(parse_interval_fields(&fields[..numeric], line)?);
        if has_label {
            labels.push(fields[n - 1].trim().to_string());
        }
    }
    if queries.is_empty() {
        return Err(Error::format("no data rows".to_string()));
    }
    Ok((
        queries,
        if labeled == Some(true) {
            Some(labels)
        } else {
            None
        },
    ))
}

/// Shared CSV pre-pass: strips comments and an optional header, trims
/// fields, rejects non-UTF-8, and returns (1-based line, fields) rows.
fn read_rows(reader: impl Read) -> Result<Vec<(u64, Vec<String>)>> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    let mut first = true;
    for record in csv_reader.records() {
        let record = record.map_err(|e| Error::format(e.to_string()))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let fields: Vec<String> = record.iter().map(str::to_string).collect();
        // header rule: a first row whose first field is not numeric
        if first {
            first = false;
            if fields[0].parse::<f64>().is_err() {
                continue;
            }
        }
        rows.push((line, fields));
    }
    Ok(rows)
}

fn parse_interval_fields(fields: &[String], line: u64) -> Result<IntervalVector> {
    let mut row = Vec::with_capacity(fields.len() / 2);
    for (k, pair) in fields.chunks(2).enumerate() {
        let lo = parse_number(&pair[0], line, 2 * k + 1)?;
        let hi = parse_number(&pair[1], line, 2 * k + 2)?;
        let iv = Interval::new(lo, hi).map_err(|_| {
            Error::validation(format!(
                "row {line}, feature {}: invalid interval [{lo}, {hi}]",
                k + 1
            ))
        })?;
        row.push(iv);
    }
    Ok(row)
}

fn parse_number(s: &str, line: u64, field: usize) -> Result<f64> {
    s.parse::<f64>().map_err(|_| {
        Error::format(format!(
            "row {line}, field {field}: cannot parse '{s}' as a number"
        ))
    })
}

/// Write a matrix in the dataset CSV schema, with a header row.
pub fn serialize_dataset(ifm: &IntervalFeatureMatrix, mut writer: impl Write) -> Result<()> {
    let io_err = |e: std::io::Error| Error::format(format!("write failed: {e}"));
    let header: Vec<String> = (1..=ifm.n_features())
        .flat_map(|k| [format!("f{k}_lo"), format!("f{k}_hi")])
        .chain(std::iter::once("label".to_string()))
        .collect();
    writeln!(writer, "{}", header.join(",")).map_err(io_err)?;
    for i in 0..ifm.n_samples() {
        let mut fields: Vec<String> = Vec::with_capacity(2 * ifm.n_features() + 1);
        for iv in ifm.sample(i) {
            fields.push(iv.lo().to_string());
            fields.push(iv.hi().to_string());
        }
        fields.push(ifm.class_name(ifm.class_of(i)).to_string());
        writeln!(writer, "{}", fields.join(",")).map_err(io_err)?;
    }
    Ok(())
}

/// Load a dataset from a file path.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<IntervalFeatureMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(file)
}

/// The bundled 30-sample Iris interval fixture (4 features, 3 classes).
pub fn iris() -> IntervalFeatureMatrix {
    parse_dataset(include_str!("../data/iris_interval.csv").as_bytes())
        .expect("bundled fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<IntervalFeatureMatrix> {
        parse_dataset(text.as_bytes())
    }

    #[test]
    fn parses_minimal_two_feature_rows() {
        let m = parse("0.5,1.5,2.0,3.0,classA\n1.0,2.0,0.0,0.5,classB\n").unwrap();
        assert_eq!(m.n_samples(), 2);
        assert_eq!(m.n_features(), 2);
        assert_eq!(m.class_names(), ["classA", "classB"]);
        assert_eq!(m.sample(0)[0].lo(), 0.5);
        assert_eq!(m.sample(0)[1].hi(), 3.0);
    }

    #[test]
    fn skips_header_and_comment_lines() {
        let m = parse("# generated\nf1_lo,f1_hi,label\n0,1,a\n2,3,b\n").unwrap();
        assert_eq!(m.n_samples(), 2);
        assert_eq!(m.n_features(), 1);
    }

    #[test]
    fn rejects_inverted_bounds_naming_row_and_feature() {
        let err = parse("0,1,0,1,a\n2.0,1.0,0,1,b\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "{msg}");
        assert!(msg.contains("feature 1"), "{msg}");
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse("0,1,0,1,a\n0,1,b\n").unwrap_err();
        assert!(matches!(err, Error::Format(_)));
        assert!(err.to_string().contains("row 2"));
    }

    #[test]
    fn rejects_empty_labels_and_bad_numbers() {
        assert!(parse("0,1,\n0,1,b\n")
            .unwrap_err()
            .to_string()
            .contains("empty label"));
        assert!(parse("0,x,a\n0,1,b\n")
            .unwrap_err()
            .to_string()
            .contains("cannot parse"));
    }

    #[test]
    fn rejects_single_class_and_non_finite() {
        assert!(parse("0,1,a\n2,3,a\n").is_err());
        assert!(parse("0,inf,a\n0,1,b\n").is_err());
    }

    #[test]
    fn iris_fixture_shape() {
        let m = iris();
        assert_eq!(m.n_samples(), 30);
        assert_eq!(m.n_features(), 4);
        assert_eq!(m.n_classes(), 3);
        for j in 0..3 {
            assert_eq!(m.class_members(j).len(), 10);
        }
    }

    #[test]
    fn transpose_shapes_and_round_trip() {
        let m = parse("0,1,2,3,4,5,a\n6,7,8,9,10,11,b\n1,2,3,4,5,6,a\n").unwrap();
        let subs = transpose_by_class(&m);
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].features.len(), 3);
        assert_eq!(subs[0].n_class_samples(), 2);
        assert_eq!(subs[1].n_class_samples(), 1);
        // column k of class j's samples reappears as row k
        let members = m.class_members(0);
        for (a, row) in subs[0].features.iter().enumerate() {
            for (s, &i) in members.iter().enumerate() {
                assert_eq!(row[s], m.sample(i)[a]);
            }
        }
    }

    #[test]
    fn split_counts_follow_round_half_up() {
        let m = iris();
        let pair = stratified_split(&m, 0.4, 1).unwrap();
        assert_eq!(pair.train.n_samples(), 12); // 4 per class
        assert_eq!(pair.test.n_samples(), 18);
        for j in 0..3 {
            assert_eq!(pair.train.class_members(j).len(), 4);
        }
        // 0.45 of 10 rounds half-up to 5
        let pair = stratified_split(&m, 0.45, 1).unwrap();
        assert_eq!(pair.train.class_members(0).len(), 5);
    }

    #[test]
    fn split_clamps_to_keep_both_sides_non_empty() {
        let m = parse("0,1,a\n1,2,a\n3,4,b\n5,6,b\n").unwrap();
        let pair = stratified_split(&m, 0.7, 9).unwrap();
        for j in 0..2 {
            assert_eq!(pair.train.class_members(j).len(), 1);
            assert_eq!(pair.test.class_members(j).len(), 1);
        }
    }

    #[test]
    fn split_is_deterministic_and_partitions_the_source() {
        let m = iris();
        let a = stratified_split(&m, 0.3, 77).unwrap();
        let b = stratified_split(&m, 0.3, 77).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
        let c = stratified_split(&m, 0.3, 78).unwrap();
        assert_ne!(a.train, c.train); // overwhelmingly likely, pinned seeds
    }

    #[test]
    fn split_rejects_tiny_classes_and_bad_fractions() {
        let m = parse("0,1,a\n1,2,a\n3,4,b\n").unwrap();
        assert!(stratified_split(&m, 0.5, 0).is_err());
        let m = iris();
        assert!(stratified_split(&m, 0.0, 0).is_err());
        assert!(stratified_split(&m, 1.0, 0).is_err());
    }

    #[test]
    fn synthesis_shape_and_planted_blocks() {
        let cfg = SynthesisConfig {
            n_classes: 2,
            n_per_class: 10,
            n_features: 6,
            informative_per_class: 2,
            separation: 5.0,
            noise_width: 1.0,
            seed: 3,
        };
        let out = synthesize_dataset(&cfg).unwrap();
        assert_eq!(out.matrix.n_samples(), 20);
        assert_eq!(out.matrix.n_features(), 6);
        assert_eq!(out.planted, vec![vec![0, 1], vec![2, 3]]);
        // planted features sit near the class offset, noise near [0, 1]
        for &i in &out.matrix.class_members(0) {
            let iv = out.matrix.sample(i)[0];
            assert!(
                (iv.lo() - 5.0).abs() < 1.5,
                "planted feature far off: {iv:?}"
            );
        }
        let rec = format_planted_record(&out.matrix, &out.planted);
        assert_eq!(rec, "class_1: 1,2\nclass_2: 3,4\n");
    }

    #[test]
    fn synthesis_rejects_overcommitted_informative_features() {
        let cfg = SynthesisConfig {
            n_classes: 3,
            n_per_class: 5,
            n_features: 5,
            informative_per_class: 2,
            separation: 5.0,
            noise_width: 1.0,
            seed: 0,
        };
        assert!(synthesize_dataset(&cfg).is_err());
    }

    #[test]
    fn zero_separation_is_a_valid_negative_control() {
        let cfg = SynthesisConfig {
            n_classes: 2,
            n_per_class: 3,
            n_features: 4,
            informative_per_class: 1,
            separation: 0.0,
            noise_width: 0.5,
            seed: 0,
        };
        assert!(synthesize_dataset(&cfg).is_ok());
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let m = iris();
        let mut buf = Vec::new();
        serialize_dataset(&m, &mut buf).unwrap();
        let back = parse_dataset(buf.as_slice()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn query_parsing_handles_labeled_and_unlabeled() {
        let (q, l) = parse_queries("0,1,2,3\n4,5,6,7\n".as_bytes()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q[0].len(), 2);
        assert!(l.is_none());

        let (q, l) = parse_queries("0,1,2,3,a\n4,5,6,7,b\n".as_bytes()).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(l.unwrap(), ["a", "b"]);

        assert!(parse_queries("0,1,2,3\n4,5,6,7,b\n".as_bytes()).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntervalFeatureMatrix> {
            (2usize..=4, 1usize..=4, 4usize..=12).prop_flat_map(|(m, d, n)| {
                let n = n.max(2 * m); // at least 2 per class via round-robin
                prop::collection::vec((-50.0f64..50.0, 0.0f64..10.0), n * d).prop_map(
                    move |bounds| {
                        let samples: Vec<IntervalVector> = bounds
                            .chunks(d)
                            .map(|row| {
                                row.iter()
                                    .map(|&(lo, len)| Interval::new(lo, lo + len).unwrap())
                                    .collect()
                            })
                            .collect();
                        let labels = (0..n).map(|i| format!("c{}", i % m)).collect();
                        IntervalFeatureMatrix::new(samples, labels).unwrap()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn split_partitions_exactly(
                m in small_matrix(),
                frac in 0.05f64..0.95,
                seed in 0u64..1000,
            ) {
                let pair = stratified_split(&m, frac, seed).unwrap();
                prop_assert_eq!(pair.train.n_samples() + pair.test.n_samples(), m.n_samples());
                for j in 0..m.n_classes() {
                    let n_j = m.class_members(j).len();
                    let expect = ((n_j as f64 * frac + 0.5).floor() as usize).clamp(1, n_j - 1);
                    prop_assert_eq!(pair.train.class_members(j).len(), expect);
                    prop_assert_eq!(pair.test.class_members(j).len(), n_j - expect);
                }
                // union reproduces the source multiset; order within each side is source order
                let mut rebuilt: Vec<&IntervalVector> =
                    pair.train.samples().iter().chain(pair.test.samples()).collect();
                let mut source: Vec<&IntervalVector> = m.samples().iter().collect();
                let key = |v: &&IntervalVector| {
                    v.iter().flat_map(|iv| [iv.lo().to_bits(), iv.hi().to_bits()]).collect::<Vec<_>>()
                };
                rebuilt.sort_by_key(key);
                source.sort_by_key(key);
                prop_assert_eq!(rebuilt, source);
            }

            #[test]
            fn serialize_parse_round_trip(m in small_matrix()) {
                let mut buf = Vec::new();
                serialize_dataset(&m, &mut buf).unwrap();
                prop_assert_eq!(parse_dataset(buf.as_slice()).unwrap(), m);
            }

            #[test]
            fn transpose_reassembles_columns(m in small_matrix()) {
                let subs = transpose_by_class(&m);
                for sub in &subs {
                    let members = m.class_members(sub.class_index);
                    prop_assert_eq!(sub.features.len(), m.n_features());
                    for (a, row) in sub.features.iter().enumerate() {
                        prop_assert_eq!(row.len(), members.len());
                        for (s, &i) in members.iter().enumerate() {
                            prop_assert_eq!(row[s], m.sample(i)[a]);
                        }
                    }
                }
            }
        }
    }
}
