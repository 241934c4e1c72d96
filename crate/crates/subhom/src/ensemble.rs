//! Induced maps from many random sub-samples into one full cloud.

use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use subhom_core::induced::Codomain;
use subhom_core::{
    build_rips_bounded, inclusion_chain_map, reduce, BettiVector, FieldMatrix, InducedMap, PointCloud, PrimeField,
    ReducedChainComplex, SimplicialComplex,
};

use crate::error::{Error, Result, StageExt};
use crate::pointcloud::{subsample, SampleSchedule, Subsample, ThresholdRule};

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub field: PrimeField,
    pub threshold: ThresholdRule,
    pub schedule: SampleSchedule,
    /// 1 builds graphs only, 2 adds triangles.
    pub max_dim: usize,
    /// Homology degree of the induced maps.
    pub k: usize,
    /// Store wall-clock timings in the records. Off by default so reruns
    /// produce identical output.
    pub record_timings: bool,
    /// Largest complex, counted in simplices, that a build may produce.
    pub max_simplices: usize,
}

pub const DEFAULT_MAX_SIMPLICES: usize = 20_000_000;

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            field: PrimeField::F3,
            threshold: ThresholdRule::default(),
            schedule: SampleSchedule::new(vec![300], 10, 0),
            max_dim: 2,
            k: 1,
            record_timings: false,
            max_simplices: DEFAULT_MAX_SIMPLICES,
        }
    }
}

impl EnsembleConfig {
    pub fn validate(&self, cloud: &PointCloud) -> Result<()> {
        if cloud.is_empty() {
            return Err(Error::invalid("the full cloud is empty"));
        }
        self.schedule.validate(cloud.len())?;
        if !(1..=2).contains(&self.max_dim) {
            return Err(Error::invalid(format!("max dimension must be 1 or 2, got {}", self.max_dim)));
        }
        if self.k > 1 {
            return Err(Error::invalid(format!("homology degree must be 0 or 1, got {}", self.k)));
        }
        Ok(())
    }
}

/// One sub-sample, drawn and thresholded but not yet analysed.
#[derive(Debug, Clone)]
pub struct PreparedSample {
    pub replicate: usize,
    pub seed: u64,
    pub sample: Subsample,
    pub threshold: f64,
    pub hash: String,
}

/// All replicates of one sub-sample size plus the threshold shared by the
/// full complex they map into.
#[derive(Debug, Clone)]
pub struct SizeSamples {
    pub size: usize,
    pub samples: Vec<PreparedSample>,
    /// Largest sub-sample threshold, so every sub-simplex exists in the full
    /// complex.
    pub full_threshold: f64,
}

/// Draws every replicate of the schedule and picks thresholds.
pub fn prepare_samples(full: &PointCloud, config: &EnsembleConfig) -> Result<Vec<SizeSamples>> {
    config.validate(full)?;
    let schedule = &config.schedule;
    schedule
        .sizes
        .iter()
        .map(|&size| {
            let samples = (0..schedule.replicates)
                .into_par_iter()
                .map(|replicate| {
                    let seed = schedule.replicate_seed(size, replicate);
                    let sample = subsample(full, size, seed)?;
                    let threshold = config.threshold.threshold(full, &sample.cloud)?;
                    let hash = sample_hash(&sample.indices);
                    Ok(PreparedSample { replicate, seed, sample, threshold, hash })
                })
                .collect::<Result<Vec<_>>>()?;
            let full_threshold = samples.iter().map(|s| s.threshold).fold(0.0, f64::max);
            Ok(SizeSamples { size, samples, full_threshold })
        })
        .collect()
}

/// First 16 hex digits of SHA-256 over the indices as little-endian `u64`s.
pub fn sample_hash(indices: &[usize]) -> String {
    let mut h = Sha256::new();
    for &i in indices {
        h.update((i as u64).to_le_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleRecord {
    pub sample_id: String,
    pub size: usize,
    pub replicate: usize,
    pub seed: u64,
    pub k: usize,
    pub threshold: f64,
    pub matrix: FieldMatrix,
    pub betti_sub: BettiVector,
    pub timing_ms: Option<f64>,
    pub sample_hash: String,
}

impl EnsembleRecord {
    pub fn induced_map(&self) -> InducedMap {
        InducedMap::new(self.matrix.clone(), self.k, self.sample_id.clone(), self.size)
    }
}

/// The full complex built for one sub-sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSpace {
    pub size: usize,
    pub threshold: f64,
    pub betti: BettiVector,
    /// Vertices, edges, triangles.
    pub simplex_counts: [usize; 3],
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ensemble {
    pub records: Vec<EnsembleRecord>,
    pub full: Vec<FullSpace>,
}

impl Ensemble {
    pub fn sizes(&self) -> Vec<usize> {
        self.full.iter().map(|f| f.size).collect()
    }

    pub fn maps_for_size(&self, size: usize) -> Vec<InducedMap> {
        self.records.iter().filter(|r| r.size == size).map(EnsembleRecord::induced_map).collect()
    }

    pub fn full_for_size(&self, size: usize) -> Option<&FullSpace> {
        self.full.iter().find(|f| f.size == size)
    }

    pub fn maps(&self) -> Vec<InducedMap> {
        self.records.iter().map(EnsembleRecord::induced_map).collect()
    }
}

pub(crate) fn build_and_reduce(
    cloud: &PointCloud,
    threshold: f64,
    config: &EnsembleConfig,
) -> Result<(SimplicialComplex, ReducedChainComplex)> {
    let complex = build_rips_bounded(cloud, threshold, config.max_dim, config.max_simplices)?;
    let reduced = reduce(&complex.chain_complex(config.field))?;
    Ok((complex, reduced))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// For each size and replicate: sub-sample, build and reduce both complexes,
/// and compute the induced map on `H_k`. The full complex is reduced once per
/// size and shared by its replicates.
pub fn induced_map_ensemble(full: &PointCloud, config: &EnsembleConfig) -> Result<Ensemble> {
    let prepared = prepare_samples(full, config).stage("sample")?;
    ensemble_from_samples(full, &prepared, config)
}

/// [`induced_map_ensemble`] on sub-samples drawn beforehand.
pub fn ensemble_from_samples(full: &PointCloud, prepared: &[SizeSamples], config: &EnsembleConfig) -> Result<Ensemble> {
    let mut ensemble = Ensemble::default();
    for group in prepared {
        let start = Instant::now();
        let (full_complex, full_red) = build_and_reduce(full, group.full_threshold, config).stage("full complex")?;
        ensemble.full.push(FullSpace {
            size: group.size,
            threshold: group.full_threshold,
            betti: full_red.betti(),
            simplex_counts: [full_complex.count(0), full_complex.count(1), full_complex.count(2)],
            timing_ms: config.record_timings.then(|| elapsed_ms(start)),
        });
        let records = group
            .samples
            .par_iter()
            .map(|s| induced_record(s, group.size, &full_complex, &full_red, config))
            .collect::<Result<Vec<_>>>()
            .stage("induced map")?;
        ensemble.records.extend(records);
    }
    Ok(ensemble)
}

fn induced_record(
    s: &PreparedSample,
    size: usize,
    full_complex: &SimplicialComplex,
    full_red: &ReducedChainComplex,
    config: &EnsembleConfig,
) -> Result<EnsembleRecord> {
    let start = Instant::now();
    let (sub_complex, sub_red) = build_and_reduce(&s.sample.cloud, s.threshold, config)?;
    let vertex_map: Vec<u32> = s.sample.indices.iter().map(|&i| i as u32).collect();
    let chain = inclusion_chain_map(&sub_complex, full_complex, Some(&vertex_map), config.k, config.field)?;
    let matrix = Codomain::new(full_red, config.k)?.induced(&sub_red, &chain)?;
    Ok(EnsembleRecord {
        sample_id: format!("n{size}-r{}", s.replicate),
        size,
        replicate: s.replicate,
        seed: s.seed,
        k: config.k,
        threshold: s.threshold,
        matrix,
        betti_sub: sub_red.betti(),
        timing_ms: config.record_timings.then(|| elapsed_ms(start)),
        sample_hash: s.hash.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcloud::generate_figure8;

    #[test]
    fn full_sized_sample_gives_identity() {
        let cloud = generate_figure8(60, 0.0, 1).unwrap();
        let config = EnsembleConfig {
            schedule: SampleSchedule::new(vec![60], 1, 0),
            threshold: ThresholdRule::Fixed(0.5),
            ..Default::default()
        };
        let e = induced_map_ensemble(&cloud, &config).unwrap();
        assert_eq!(e.records.len(), 1);
        let m = &e.records[0].matrix;
        assert_eq!(m, &FieldMatrix::identity(PrimeField::F3, m.rows()));
        assert_eq!(e.full[0].betti, e.records[0].betti_sub);
    }

    #[test]
    fn hash_depends_on_indices() {
        assert_ne!(sample_hash(&[1, 2]), sample_hash(&[1, 3]));
        assert_eq!(sample_hash(&[1, 2]).len(), 16);
    }

    #[test]
    fn records_are_deterministic() {
        let cloud = generate_figure8(200, 0.05, 3).unwrap();
        let config = EnsembleConfig { schedule: SampleSchedule::new(vec![50], 3, 7), ..Default::default() };
        assert_eq!(induced_map_ensemble(&cloud, &config).unwrap(), induced_map_ensemble(&cloud, &config).unwrap());
    }
}
