//! Topological bootstrapping and the timing harness.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use subhom_core::{persistence_baseline, BettiVector, PointCloud, WeightOptions};

use crate::ensemble::{build_and_reduce, ensemble_from_samples, prepare_samples, EnsembleConfig, SizeSamples};
use crate::error::Result;
use crate::pipeline::estimate_maps;
use crate::pointcloud::SampleSchedule;

/// Sums the sub-sample Betti numbers of each size, counting every distinct
/// sub-sample once and never matching features between sub-samples.
pub fn bootstrap_baseline(full: &PointCloud, config: &EnsembleConfig) -> Result<Vec<(usize, BettiVector)>> {
    let prepared = prepare_samples(full, config)?;
    prepared.iter().map(|group| bootstrap_group(group, config)).collect()
}

fn bootstrap_group(group: &SizeSamples, config: &EnsembleConfig) -> Result<(usize, BettiVector)> {
    let mut seen = BTreeSet::new();
    let distinct: Vec<_> = group.samples.iter().filter(|s| seen.insert(s.sample.indices.clone())).collect();
    let bettis = distinct
        .par_iter()
        .map(|s| Ok(build_and_reduce(&s.sample.cloud, s.threshold, config)?.1.betti()))
        .collect::<Result<Vec<_>>>()?;
    Ok((group.size, sum_betti(&bettis)))
}

fn sum_betti(bettis: &[BettiVector]) -> BettiVector {
    let len = bettis.iter().map(|b| b.0.len()).max().unwrap_or(0);
    BettiVector((0..len).map(|k| bettis.iter().map(|b| b.get(k)).sum()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Rips persistence on every sub-sample.
    Rc,
    /// Weights plus greedy basis over precomputed induced maps.
    Gma,
    /// Topological bootstrapping.
    Tb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rc => "RC",
            Method::Gma => "GMA",
            Method::Tb => "TB",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub method: Method,
    pub size: usize,
    pub seed: u64,
    pub wall_time_s: f64,
    pub homology: BettiVector,
    /// Hash over the replicate sample hashes; equal across methods for one
    /// `(size, seed)`.
    pub samples_hash: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    /// Runs with seeds `seed, seed + 1, ...`.
    pub runs: usize,
    /// Filtration steps of the persistence baseline.
    pub steps: usize,
    pub weights: WeightOptions,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self { runs: 1, steps: 10, weights: WeightOptions::default() }
    }
}

/// Times RC, GMA and TB on identical sub-samples for every size and run.
///
/// RC is the persistence baseline over all replicates of a size, with each
/// sub-sample's own threshold as the largest scale. GMA covers weighing and
/// the greedy pass only; the induced maps are prepared beforehand. TB covers
/// building and reducing the sub-sample complexes.
pub fn run_benchmark(full: &PointCloud, config: &EnsembleConfig, options: BenchOptions) -> Result<Vec<BenchmarkRecord>> {
    let mut records = Vec::new();
    for run in 0..options.runs as u64 {
        let seed = config.schedule.seed.wrapping_add(run);
        let run_config = EnsembleConfig {
            schedule: SampleSchedule { seed, ..config.schedule.clone() },
            record_timings: false,
            ..config.clone()
        };
        let prepared = prepare_samples(full, &run_config)?;
        let ensemble = ensemble_from_samples(full, &prepared, &run_config)?;
        for group in &prepared {
            let samples_hash = combined_hash(group);
            let record = |method, wall_time_s, homology| BenchmarkRecord {
                method,
                size: group.size,
                seed,
                wall_time_s,
                homology,
                samples_hash: samples_hash.clone(),
            };

            let start = Instant::now();
            let mut alive = Vec::new();
            for s in &group.samples {
                let pairs = persistence_baseline(&s.sample.cloud, s.threshold, options.steps, config.field)?;
                let count = |dim| pairs.iter().filter(|p| p.dim == dim && p.is_infinite()).count();
                alive.push(BettiVector(vec![count(0), count(1)]));
            }
            records.push(record(Method::Rc, start.elapsed().as_secs_f64(), sum_betti(&alive)));

            let maps = ensemble.maps_for_size(group.size);
            let beta0 = ensemble.full_for_size(group.size).map_or(0, |f| f.betti.get(0));
            let (_, estimate, gma_seconds) = estimate_maps(&maps, beta0, options.weights)?;
            records.push(record(Method::Gma, gma_seconds, estimate));

            let start = Instant::now();
            let mut bettis = Vec::new();
            let mut seen = BTreeSet::new();
            for s in &group.samples {
                if seen.insert(&s.sample.indices) {
                    bettis.push(build_and_reduce(&s.sample.cloud, s.threshold, &run_config)?.1.betti());
                }
            }
            records.push(record(Method::Tb, start.elapsed().as_secs_f64(), sum_betti(&bettis)));
        }
    }
    Ok(records)
}

fn combined_hash(group: &SizeSamples) -> String {
    let joined: Vec<usize> = group
        .samples
        .iter()
        .flat_map(|s| s.sample.indices.iter().copied().chain(std::iter::once(usize::MAX)))
        .collect();
    crate::ensemble::sample_hash(&joined)
}

/// Mean wall time and mean homology per `(method, size)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub method: Method,
    pub size: usize,
    pub runs: usize,
    pub mean_wall_time_s: f64,
    pub mean_homology: Vec<f64>,
}

pub fn summarize(records: &[BenchmarkRecord]) -> Vec<BenchSummary> {
    let mut keys: Vec<(Method, usize)> = records.iter().map(|r| (r.method, r.size)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(method, size)| {
            let group: Vec<_> = records.iter().filter(|r| r.method == method && r.size == size).collect();
            let n = group.len() as f64;
            let dims = group.iter().map(|r| r.homology.0.len()).max().unwrap_or(0);
            BenchSummary {
                method,
                size,
                runs: group.len(),
                mean_wall_time_s: group.iter().map(|r| r.wall_time_s).sum::<f64>() / n,
                mean_homology: (0..dims).map(|k| group.iter().map(|r| r.homology.get(k) as f64).sum::<f64>() / n).collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcloud::{generate_figure8, ThresholdRule};

    #[test]
    fn single_full_replicate_matches_true_homology() {
        let cloud = generate_figure8(80, 0.0, 2).unwrap();
        let config = EnsembleConfig {
            schedule: SampleSchedule::new(vec![80], 1, 0),
            threshold: ThresholdRule::Fixed(0.5),
            ..Default::default()
        };
        let tb = bootstrap_baseline(&cloud, &config).unwrap();
        let truth = build_and_reduce(&cloud, 0.5, &config).unwrap().1.betti();
        assert_eq!(tb, vec![(80, truth)]);
    }

    #[test]
    fn duplicate_samples_count_once() {
        let cloud = generate_figure8(30, 0.0, 2).unwrap();
        let config = EnsembleConfig {
            schedule: SampleSchedule::new(vec![30], 5, 0),
            threshold: ThresholdRule::Fixed(0.5),
            ..Default::default()
        };
        let tb = bootstrap_baseline(&cloud, &config).unwrap();
        let truth = build_and_reduce(&cloud, 0.5, &config).unwrap().1.betti();
        assert_eq!(tb[0].1, truth);
    }

    #[test]
    fn smoke_benchmark_is_well_formed() {
        let cloud = generate_figure8(10, 0.1, 0).unwrap();
        let config = EnsembleConfig { schedule: SampleSchedule::new(vec![5, 10], 2, 0), ..Default::default() };
        let recs = run_benchmark(&cloud, &config, BenchOptions { runs: 2, ..Default::default() }).unwrap();
        assert_eq!(recs.len(), 2 * 2 * 3);
        assert!(recs.iter().all(|r| r.wall_time_s >= 0.0));
        let summary = summarize(&recs);
        assert_eq!(summary.len(), 6);
        assert!(summary.iter().all(|s| s.runs == 2));
    }
}
