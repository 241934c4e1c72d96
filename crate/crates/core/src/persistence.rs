//! Persistence of a Rips filtration sampled at evenly spaced thresholds.
//!
//! Only the baseline timings depend on this, so the filtration is coarse:
//! a simplex enters at the first of `steps` thresholds in `(0, r_max]` that
//! covers its diameter.

use alloc::vec;
use alloc::vec::Vec;

use crate::cloud::PointCloud;
use crate::error::{invalid, Result};
use crate::field::PrimeField;
use crate::homology::reduce_columns;
use crate::rips::{boundary_matrices, build_rips};
use crate::sparse::SparseColumn;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    /// `None` for classes alive at `r_max`.
    pub death: Option<f64>,
}

impl PersistencePair {
    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    pub fn lifetime(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }
}

/// Pairs in degrees 0 and 1, zero-length pairs dropped, sorted by
/// `(dim, birth, death)` with infinite deaths last.
pub fn persistence_baseline(
    cloud: &PointCloud,
    r_max: f64,
    steps: usize,
    field: PrimeField,
) -> Result<Vec<PersistencePair>> {
    if steps == 0 {
        return Err(invalid("at least one filtration step is required"));
    }
    let complex = build_rips(cloud, r_max, 2)?;
    let thresholds: Vec<f64> = (1..=steps).map(|s| r_max * s as f64 / steps as f64).collect();
    let step_of = |d2: f64| -> u32 {
        // the complex was built at r_max, so some step always covers d2
        thresholds.iter().position(|&t| d2 <= t * t).unwrap_or(steps - 1) as u32 + 1
    };
    let value = |s: u32| if s == 0 { 0.0 } else { thresholds[s as usize - 1] };

    let edge_step: Vec<u32> = complex
        .edges()
        .iter()
        .map(|&[a, b]| step_of(cloud.squared_distance(a as usize, b as usize)))
        .collect();
    let boundaries = boundary_matrices(&complex, field);
    let tri_step: Vec<u32> = boundaries[1]
        .matrix
        .columns()
        .iter()
        .map(|c| c.entries().iter().map(|&(e, _)| edge_step[e as usize]).max().unwrap_or(0))
        .collect();

    // Filtration order inside each degree: (step, original index).
    let edge_order = order_by(&edge_step);
    let tri_order = order_by(&tri_step);
    let mut edge_pos = vec![0u32; edge_order.len()];
    for (pos, &e) in edge_order.iter().enumerate() {
        edge_pos[e] = pos as u32;
    }

    let d2_cols = tri_order.iter().map(|&t| {
        let pairs = boundaries[1].matrix.column(t).entries().iter().map(|&(e, v)| (edge_pos[e as usize], v)).collect();
        SparseColumn::from_pairs(field, pairs)
    });
    let red2 = reduce_columns(field, edge_order.len(), d2_cols, false, None);

    // Edges that are the lowest row of some reduced triangle column are
    // cycles already paired with a death; their own reduction would give zero.
    let cleared: Vec<bool> = red2.pivots.iter().map(|&p| p != u32::MAX).collect();
    let d1_cols = edge_order.iter().map(|&e| boundaries[0].matrix.column(e).clone());
    let red1 = reduce_columns(field, complex.vertex_count(), d1_cols, false, Some(&cleared));

    let mut pairs = Vec::new();
    for &killer in &red1.pivots {
        let death = (killer != u32::MAX).then(|| value(edge_step[edge_order[killer as usize]]));
        if death != Some(0.0) {
            pairs.push(PersistencePair { dim: 0, birth: 0.0, death });
        }
    }
    for (pos, &e) in edge_order.iter().enumerate() {
        if !red1.r[pos].is_zero() {
            continue;
        }
        let birth_step = edge_step[e];
        let killer = red2.pivots[pos];
        let death_step = (killer != u32::MAX).then(|| tri_step[tri_order[killer as usize]]);
        if death_step == Some(birth_step) {
            continue;
        }
        pairs.push(PersistencePair { dim: 1, birth: value(birth_step), death: death_step.map(value) });
    }
    pairs.sort_by(|a, b| {
        let key = |p: &PersistencePair| (p.dim, p.birth, p.death.unwrap_or(f64::INFINITY));
        key(a).partial_cmp(&key(b)).expect("finite filtration values")
    });
    Ok(pairs)
}

fn order_by(step: &[u32]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..step.len()).collect();
    order.sort_by_key(|&i| step[i]);
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduce;

    const F3: PrimeField = PrimeField::F3;

    #[test]
    fn one_point() {
        let c = PointCloud::from_points(&[[0.0, 0.0]]).unwrap();
        let pairs = persistence_baseline(&c, 1.0, 4, F3).unwrap();
        assert_eq!(pairs, [PersistencePair { dim: 0, birth: 0.0, death: None }]);
    }

    #[test]
    fn two_far_points() {
        let c = PointCloud::from_points(&[[0.0], [5.0]]).unwrap();
        let pairs = persistence_baseline(&c, 1.0, 4, F3).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|p| p.dim == 0 && p.is_infinite()));
    }

    #[test]
    fn close_points_merge() {
        let c = PointCloud::from_points(&[[0.0], [0.3]]).unwrap();
        let pairs = persistence_baseline(&c, 1.0, 10, F3).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].dim, 0);
        assert!((pairs[0].death.unwrap() - 0.3).abs() < 1e-12);
        assert!(pairs[1].is_infinite());
    }

    fn circle(n: usize) -> PointCloud {
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = core::f64::consts::TAU * i as f64 / n as f64;
                [libm::cos(t), libm::sin(t)]
            })
            .collect();
        PointCloud::from_points(&pts).unwrap()
    }

    #[test]
    fn circle_has_one_long_loop() {
        let c = circle(12);
        let pairs = persistence_baseline(&c, 2.0, 40, F3).unwrap();
        let loops: Vec<_> = pairs.iter().filter(|p| p.dim == 1).collect();
        assert_eq!(loops.len(), 1);
        let mid = 1.0;
        let betti1 = reduce(&build_rips(&c, mid, 2).unwrap().chain_complex(F3)).unwrap().betti().get(1);
        assert_eq!(betti1, 1);
        assert!(loops[0].birth <= mid && loops[0].death.unwrap() > mid);
    }

    #[test]
    fn infinite_components_match_betti0() {
        let c = PointCloud::from_points(&[[0.0, 0.0], [0.2, 0.0], [3.0, 0.0], [3.1, 0.1], [9.0, 9.0]]).unwrap();
        let pairs = persistence_baseline(&c, 0.5, 5, F3).unwrap();
        let inf0 = pairs.iter().filter(|p| p.dim == 0 && p.is_infinite()).count();
        let b0 = reduce(&build_rips(&c, 0.5, 2).unwrap().chain_complex(F3)).unwrap().betti().get(0);
        assert_eq!(inf0, b0);
    }

    #[test]
    fn zero_steps_rejected() {
        let c = circle(3);
        assert!(persistence_baseline(&c, 1.0, 0, F3).is_err());
    }
}
