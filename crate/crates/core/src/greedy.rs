//! Weighting of induced-map ensembles and the greedy matroid basis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::field::PrimeField;
use crate::homology::BettiVector;
use crate::induced::InducedMap;
use crate::lu::{rank, solve_in_span};
use crate::matrix::FieldMatrix;

/// Which slices of a binarized map are compared when counting distinct
/// patterns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum DedupAxis {
    #[default]
    Columns,
    Rows,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct WeightOptions {
    /// Leave the all-zero pattern out of the distinct count.
    pub ignore_zero_columns: bool,
    pub axis: DedupAxis,
}

/// An ensemble with binarized matrices, weights, and the visiting order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMapSet {
    maps: Vec<InducedMap>,
    binarized: Vec<FieldMatrix>,
    weights: Vec<usize>,
    order: Vec<usize>,
}

impl WeightedMapSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[InducedMap] {
        &self.maps
    }

    pub fn binarized(&self, i: usize) -> &FieldMatrix {
        &self.binarized[i]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Map indices by weight descending, ties by index ascending.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Binarizes every map and weighs it by its number of distinct column
/// patterns (or row patterns, see [`WeightOptions`]).
pub fn form_weights(ensemble: &[InducedMap], options: WeightOptions) -> WeightedMapSet {
    let binarized: Vec<FieldMatrix> = ensemble.iter().map(|m| m.matrix.binarize()).collect();
    let weights: Vec<usize> = binarized.iter().map(|b| distinct_patterns(b, options)).collect();
    let mut order: Vec<usize> = (0..ensemble.len()).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
    WeightedMapSet { maps: ensemble.to_vec(), binarized, weights, order }
}

fn distinct_patterns(m: &FieldMatrix, options: WeightOptions) -> usize {
    let patterns: Vec<Vec<u32>> = match options.axis {
        DedupAxis::Columns => m.columns().collect(),
        DedupAxis::Rows => (0..m.rows()).map(|i| m.row(i).to_vec()).collect(),
    };
    patterns
        .into_iter()
        .filter(|p| !(options.ignore_zero_columns && p.iter().all(|&v| v == 0)))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Output of the greedy pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasisEstimate {
    /// Accepted vectors as columns. The first `base_rows` rows carry the
    /// data; every acceptance after seeding appends one zero row.
    pub basis: FieldMatrix,
    /// `(sample_id, column)` of each accepted vector.
    pub provenance: Vec<(String, usize)>,
    pub n_zeros: usize,
    /// Row count shared by the ensemble's nonempty maps.
    pub base_rows: usize,
}

impl HomologyBasisEstimate {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// The basis without the zero padding rows.
    pub fn trimmed(&self) -> FieldMatrix {
        self.basis.top_rows(self.base_rows)
    }
}

/// Greedy scan over the binarized columns in weight order, accepting each one
/// that is outside the span of those already accepted.
///
/// The heaviest map seeds the basis with its independent columns. Every
/// later acceptance bumps `n_zeros`, and candidates are padded with that many
/// zeros before the span test.
pub fn greedy_basis(weighted: &WeightedMapSet) -> Result<HomologyBasisEstimate> {
    let field = weighted.binarized.first().map_or(PrimeField::default(), FieldMatrix::field);
    let mut base_rows = None;
    for (i, m) in weighted.binarized.iter().enumerate() {
        if m.field() != field {
            return Err(invalid(format!("map {i} lives over a different field")));
        }
        if m.rows() == 0 {
            continue;
        }
        match base_rows {
            None => base_rows = Some(m.rows()),
            Some(r) if r != m.rows() => {
                return Err(invalid(format!(
                    "map {i} ({}) has {} rows, earlier maps have {r}",
                    weighted.maps[i].sample_id,
                    m.rows()
                )))
            }
            Some(_) => {}
        }
    }
    let base_rows = base_rows.unwrap_or(0);
    let mut est = HomologyBasisEstimate {
        basis: FieldMatrix::zeros(field, base_rows, 0),
        provenance: Vec::new(),
        n_zeros: 0,
        base_rows,
    };
    if base_rows == 0 {
        return Ok(est);
    }

    let mut order = weighted.order.iter().copied();
    if let Some(first) = order.next() {
        let seed = &weighted.binarized[first];
        for (j, col) in seed.columns().enumerate() {
            if seed.rows() == base_rows && solve_in_span(&est.basis, &col).is_none() {
                est.basis.push_column(&col);
                est.provenance.push((weighted.maps[first].sample_id.clone(), j));
            }
        }
    }
    for idx in order {
        let m = &weighted.binarized[idx];
        if m.rows() == 0 {
            continue;
        }
        for (j, mut b) in m.columns().enumerate() {
            b.resize(base_rows + est.n_zeros, 0);
            if solve_in_span(&est.basis, &b).is_none() {
                est.basis.push_column(&b);
                est.basis.push_zero_rows(1);
                est.n_zeros += 1;
                est.provenance.push((weighted.maps[idx].sample_id.clone(), j));
            }
        }
    }
    Ok(est)
}

/// `(β_0 of the full complex, rank of the basis)`.
pub fn estimate_from_basis(est: &HomologyBasisEstimate, beta0_full: usize) -> BettiVector {
    BettiVector(alloc::vec![beta0_full, rank(&est.basis)])
}

/// Empirical rank distribution of the maps of one sub-sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct RankStatistics {
    pub size: usize,
    pub samples: usize,
    pub mean_rank: f64,
    /// `histogram[r]` counts maps of rank `r`.
    pub histogram: Vec<usize>,
}

/// Groups maps by `sample_size` (ascending) and tallies their ranks.
pub fn rank_statistics(ensemble: &[InducedMap]) -> Vec<RankStatistics> {
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for m in ensemble {
        by_size.entry(m.sample_size).or_default().push(rank(&m.matrix));
    }
    by_size
        .into_iter()
        .map(|(size, ranks)| {
            let max = ranks.iter().copied().max().unwrap_or(0);
            let mut histogram = alloc::vec![0; max + 1];
            for &r in &ranks {
                histogram[r] += 1;
            }
            let mean_rank = ranks.iter().sum::<usize>() as f64 / ranks.len() as f64;
            RankStatistics { size, samples: ranks.len(), mean_rank, histogram }
        })
        .collect()
}
