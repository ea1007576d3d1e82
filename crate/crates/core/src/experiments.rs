//! Sampling experiments: margin profiles over random tournaments, per-sample
//! CSV rows and per-cell aggregates.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorConfig, Model};
use crate::mov::{mov_profile, MovValue, BA_GUARD, BRUTE_GUARD};
use crate::rng::mix_all;
use crate::solutions::{winners, SolutionId};
use crate::tournament::Tournament;

pub const DEFAULT_SIZES: [usize; 6] = [5, 10, 15, 20, 25, 30];
pub const DEFAULT_SAMPLES: usize = 100;

pub const CSV_HEADER: &str = "model,params,n,sample,solution,winner_count,argmax_mov_size,unique_mov_count,unique_copeland_count,min_mov,max_mov,singleton_argmax";

/// A model with optional parameter overrides, as written in config files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub name: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

impl ModelSpec {
    pub fn new(name: Model) -> Self {
        ModelSpec {
            name,
            p: None,
            voters: None,
            alpha_factor: None,
            phi: None,
        }
    }

    pub fn config(&self, n: usize, seed: u64) -> GeneratorConfig {
        let mut cfg = GeneratorConfig::new(self.name, n, seed);
        if let Some(p) = self.p {
            cfg.p = p;
        }
        if let Some(v) = self.voters {
            cfg.voters = v;
        }
        if let Some(a) = self.alpha_factor {
            cfg.alpha_factor = a;
        }
        if let Some(phi) = self.phi {
            cfg.phi = phi;
        }
        cfg
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_models")]
    pub models: Vec<ModelSpec>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_solutions")]
    pub solutions: Vec<SolutionId>,
    #[serde(default)]
    pub seed: u64,
}

fn default_models() -> Vec<ModelSpec> {
    Model::ALL.into_iter().map(ModelSpec::new).collect()
}

fn default_sizes() -> Vec<usize> {
    DEFAULT_SIZES.to_vec()
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_solutions() -> Vec<SolutionId> {
    SolutionId::FAST.to_vec()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            models: default_models(),
            sizes: default_sizes(),
            samples: default_samples(),
            solutions: default_solutions(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.models.is_empty() || self.sizes.is_empty() || self.solutions.is_empty() {
            return bad("models, sizes and solutions must be nonempty".into());
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 3) {
            return bad(format!("sizes must be >= 3, got {n}"));
        }
        let largest = *self.sizes.iter().max().unwrap();
        for &s in &self.solutions {
            let ok = match s {
                SolutionId::Kings(k) if k < 3 => false,
                SolutionId::Kings(k) if k > 3 => self.sizes.iter().all(|&n| k >= n - 1 || n <= BRUTE_GUARD),
                SolutionId::Ba => largest <= BA_GUARD,
                _ => true,
            };
            if !ok {
                return bad(format!("solution {s} is not computable at n={largest}"));
            }
        }
        for m in &self.models {
            m.config(largest, 0).validate()?;
        }
        Ok(())
    }

    /// Generator configuration for one cell, with its derived seed.
    pub fn cell(&self, model_index: usize, n: usize, sample: usize) -> GeneratorConfig {
        self.models[model_index].config(n, sample_seed(self.seed, model_index, n, sample))
    }
}

/// Seed of one sample: the master seed mixed with model index, size and
/// sample index, in that order.
pub fn sample_seed(master: u64, model_index: usize, n: usize, sample: usize) -> u64 {
    mix_all(master, &[model_index as u64, n as u64, sample as u64])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub model: String,
    pub params: String,
    pub n: usize,
    pub sample: usize,
    pub solution: String,
    pub winner_count: usize,
    pub argmax_mov_size: usize,
    pub unique_mov_count: usize,
    pub unique_copeland_count: usize,
    pub min_mov: i64,
    pub max_mov: i64,
    pub singleton_argmax: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub winner_count: usize,
    pub argmax_mov_size: usize,
    pub unique_mov_count: usize,
    pub unique_copeland_count: usize,
    pub min_mov: i64,
    pub max_mov: i64,
}

pub fn metrics_for(t: &Tournament, s: SolutionId) -> Result<Metrics> {
    let profile = mov_profile(t, s)?;
    let finite = |v: MovValue| {
        v.finite()
            .ok_or_else(|| Error::InvalidConfig(format!("{s} produced an infinite margin")))
    };
    let values = profile.values().map(finite).collect::<Result<Vec<i64>>>()?;
    Ok(Metrics {
        winner_count: winners(t, s)?.len(),
        argmax_mov_size: profile.argmax.len(),
        unique_mov_count: profile.unique_values,
        unique_copeland_count: t
            .alternatives()
            .map(|x| t.outdegree(x))
            .collect::<BTreeSet<_>>()
            .len(),
        min_mov: *values.iter().min().unwrap(),
        max_mov: *values.iter().max().unwrap(),
    })
}

/// Runs every (model, size, sample) cell on the current rayon pool. Rows
/// come back sorted by model, size, sample and solution in config order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let cells: Vec<(usize, usize, usize)> = (0..cfg.models.len())
        .flat_map(|m| {
            cfg.sizes
                .iter()
                .flat_map(move |&n| (0..cfg.samples).map(move |s| (m, n, s)))
        })
        .collect();
    let per_cell = cells
        .par_iter()
        .map(|&(m, n, sample)| {
            run_cell(cfg, m, n, sample).map_err(|e| Error::InCell {
                cell: format!("model {} n={n} sample={sample}", cfg.models[m].name),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // Cells were enumerated in canonical order and rayon preserves it;
    // solutions within a cell follow config order.
    Ok(per_cell.into_iter().flatten().collect())
}

fn run_cell(cfg: &ExperimentConfig, m: usize, n: usize, sample: usize) -> Result<Vec<ExperimentRow>> {
    let gen = cfg.cell(m, n, sample);
    let t = generate(&gen)?;
    cfg.solutions
        .iter()
        .map(|&s| {
            let k = metrics_for(&t, s)?;
            Ok(ExperimentRow {
                model: gen.model.name().to_string(),
                params: gen.params(),
                n,
                sample,
                solution: s.to_string(),
                winner_count: k.winner_count,
                argmax_mov_size: k.argmax_mov_size,
                unique_mov_count: k.unique_mov_count,
                unique_copeland_count: k.unique_copeland_count,
                min_mov: k.min_mov,
                max_mov: k.max_mov,
                singleton_argmax: (k.argmax_mov_size == 1) as u8,
            })
        })
        .collect()
}

pub fn write_rows<W: Write>(rows: &[ExperimentRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(input: R) -> std::result::Result<Vec<ExperimentRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn write_rows_file(rows: &[ExperimentRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_rows(rows, file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_rows_file(path: &Path) -> Result<Vec<ExperimentRow>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_rows(file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// Means over the samples of one (model, params, n, solution) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub model: String,
    pub params: String,
    pub n: usize,
    pub solution: String,
    pub samples: usize,
    pub mean_winner_count: f64,
    pub mean_argmax_mov_size: f64,
    pub mean_unique_mov_count: f64,
    pub mean_unique_copeland_count: f64,
    pub singleton_fraction: f64,
    pub mean_argmax_ratio: f64,
}

/// Aggregates rows cell by cell, keeping first-appearance order.
pub fn summarize(rows: &[ExperimentRow]) -> Vec<SummaryRow> {
    let mut groups: Vec<(String, String, usize, String, Vec<&ExperimentRow>)> = Vec::new();
    for r in rows {
        match groups
            .iter_mut()
            .find(|g| g.0 == r.model && g.1 == r.params && g.2 == r.n && g.3 == r.solution)
        {
            Some(g) => g.4.push(r),
            None => groups.push((
                r.model.clone(),
                r.params.clone(),
                r.n,
                r.solution.clone(),
                vec![r],
            )),
        }
    }
    groups
        .into_iter()
        .map(|(model, params, n, solution, rs)| {
            let k = rs.len() as f64;
            let mean = |f: &dyn Fn(&ExperimentRow) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / k;
            SummaryRow {
                model,
                params,
                n,
                solution,
                samples: rs.len(),
                mean_winner_count: mean(&|r| r.winner_count as f64),
                mean_argmax_mov_size: mean(&|r| r.argmax_mov_size as f64),
                mean_unique_mov_count: mean(&|r| r.unique_mov_count as f64),
                mean_unique_copeland_count: mean(&|r| r.unique_copeland_count as f64),
                singleton_fraction: mean(&|r| r.singleton_argmax as f64),
                mean_argmax_ratio: mean(&|r| r.argmax_mov_size as f64 / r.winner_count as f64),
            }
        })
        .collect()
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_file(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_summary(rows, file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// Fixed-width text rendering of a summary.
pub fn summary_table(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>4} {:<8} {:>7} {:>9} {:>9} {:>9} {:>9} {:>9} {:>7}",
        "model", "n", "solution", "samples", "winners", "argmax", "unique", "copeland", "singleton", "ratio"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:>4} {:<8} {:>7} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>9.3} {:>7.3}",
            r.model,
            r.n,
            r.solution,
            r.samples,
            r.mean_winner_count,
            r.mean_argmax_mov_size,
            r.mean_unique_mov_count,
            r.mean_unique_copeland_count,
            r.singleton_fraction,
            r.mean_argmax_ratio
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclone, fig2, transitive};

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            models: vec![ModelSpec::new(Model::Uniform)],
            sizes: vec![6],
            samples: 2,
            solutions: vec![SolutionId::Tc, SolutionId::Uc],
            seed: 17,
        }
    }

    #[test]
    fn metrics_examples() {
        let m = metrics_for(&fig2().tournament, SolutionId::Co).unwrap();
        assert_eq!(
            (
                m.winner_count,
                m.argmax_mov_size,
                m.unique_mov_count,
                m.unique_copeland_count
            ),
            (1, 1, 3, 3)
        );
        let m = metrics_for(&cyclone(5), SolutionId::Tc).unwrap();
        assert_eq!((m.winner_count, m.argmax_mov_size, m.unique_mov_count), (5, 5, 1));
        for s in SolutionId::FAST {
            let m = metrics_for(&transitive(6), s).unwrap();
            assert_eq!((m.winner_count, m.argmax_mov_size), (1, 1));
        }
    }

    #[test]
    fn cardinality_and_determinism() {
        let rows = run_experiment(&small()).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows, run_experiment(&small()).unwrap());
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with(CSV_HEADER));
        assert!(!text.contains('\r'));
        assert_eq!(read_rows(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn empty_rows_give_header_only() {
        let mut buf = Vec::new();
        write_rows(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn summary_means() {
        let row = |sample, argmax| ExperimentRow {
            model: "uniform".into(),
            params: String::new(),
            n: 5,
            sample,
            solution: "tc".into(),
            winner_count: 3,
            argmax_mov_size: argmax,
            unique_mov_count: 1,
            unique_copeland_count: 1,
            min_mov: -1,
            max_mov: 1,
            singleton_argmax: (argmax == 1) as u8,
        };
        let s = summarize(&[row(0, 1), row(1, 1), row(2, 3)]);
        assert_eq!(s.len(), 1);
        assert!((s[0].mean_argmax_mov_size - 5.0 / 3.0).abs() < 1e-12);
        assert!((s[0].singleton_fraction - 2.0 / 3.0).abs() < 1e-12);
        assert!(summary_table(&s).lines().count() == 2);
    }

    #[test]
    fn config_parsing() {
        let cfg = ExperimentConfig::from_json(
            r#"{"models":[{"name":"mallows","phi":0.8}],"sizes":[5],"samples":3,"solutions":["uc","kings3"],"seed":4}"#,
        )
        .unwrap();
        assert_eq!(cfg.models[0].phi, Some(0.8));
        assert_eq!(cfg.solutions, vec![SolutionId::Uc, SolutionId::Kings(3)]);
        assert!(ExperimentConfig::from_json(r#"{"models":[],"bogus":1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"models":[{"name":"ic","x":1}]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"sizes":[2]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"solutions":["ba"]}"#).is_err());
        assert_eq!(
            ExperimentConfig::from_json("{}").unwrap(),
            ExperimentConfig::default()
        );
    }
}
