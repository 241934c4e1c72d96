//! Ensemble -> weights -> greedy basis -> Betti estimate.

use std::collections::BTreeMap;
use std::time::Instant;

use subhom_core::{
    estimate_from_basis, form_weights, greedy_basis, BettiVector, HomologyBasisEstimate, InducedMap,
    PointCloud, WeightOptions,
};

use crate::ensemble::{induced_map_ensemble, Ensemble, EnsembleConfig};
use crate::error::{Result, StageExt};

/// The greedy basis for one sub-sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeEstimate {
    pub size: usize,
    pub basis: HomologyBasisEstimate,
    pub estimate: BettiVector,
    /// Time spent weighing and in the greedy pass.
    pub gma_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub ensemble: Ensemble,
    pub estimates: Vec<SizeEstimate>,
}

/// Weighs `maps` and runs the greedy pass. All maps must share a codomain.
pub fn estimate_maps(maps: &[InducedMap], beta0_full: usize, options: WeightOptions) -> Result<(HomologyBasisEstimate, BettiVector, f64)> {
    let start = Instant::now();
    let weighted = form_weights(maps, options);
    let basis = greedy_basis(&weighted).stage("greedy basis")?;
    let seconds = start.elapsed().as_secs_f64();
    let estimate = estimate_from_basis(&basis, beta0_full);
    Ok((basis, estimate, seconds))
}

/// Groups an ensemble by size and estimates each group.
pub fn estimate_ensemble(ensemble: &Ensemble, options: WeightOptions) -> Result<Vec<SizeEstimate>> {
    ensemble
        .full
        .iter()
        .map(|full| {
            let maps = ensemble.maps_for_size(full.size);
            let (basis, estimate, gma_seconds) = estimate_maps(&maps, full.betti.get(0), options)?;
            Ok(SizeEstimate { size: full.size, basis, estimate, gma_seconds })
        })
        .collect()
}

/// Estimates stored maps size by size, in ascending order of sample size.
/// Maps of one size must share a codomain.
pub fn estimate_by_size(maps: &[InducedMap], beta0_full: usize, options: WeightOptions) -> Result<Vec<SizeEstimate>> {
    let mut groups: BTreeMap<usize, Vec<InducedMap>> = BTreeMap::new();
    for m in maps {
        groups.entry(m.sample_size).or_default().push(m.clone());
    }
    groups
        .into_iter()
        .map(|(size, group)| {
            let (basis, estimate, gma_seconds) = estimate_maps(&group, beta0_full, options)?;
            Ok(SizeEstimate { size, basis, estimate, gma_seconds })
        })
        .collect()
}

pub fn run_pipeline(full: &PointCloud, config: &EnsembleConfig, options: WeightOptions) -> Result<PipelineOutput> {
    config.validate(full)?;
    let ensemble = induced_map_ensemble(full, config)?;
    let estimates = estimate_ensemble(&ensemble, options)?;
    Ok(PipelineOutput { ensemble, estimates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcloud::{generate_figure8, SampleSchedule};

    #[test]
    fn tiny_samples_give_empty_basis() {
        let cloud = generate_figure8(300, 0.1, 0).unwrap();
        let config = EnsembleConfig { schedule: SampleSchedule::new(vec![5], 4, 0), ..Default::default() };
        let out = run_pipeline(&cloud, &config, WeightOptions::default()).unwrap();
        assert_eq!(out.estimates.len(), 1);
        assert_eq!(out.estimates[0].estimate.get(1), 0);
    }
}
