//! Figure-8 and annulus constructions among the columns of a basis matrix.
//!
//! A circuit is a dependent set of columns whose kernel vector has full
//! support, i.e. a minimal dependent set. An annulus needs one circuit; a
//! figure-8 needs two distinct dependent sets sharing a column that takes part
//! in both dependencies.

use alloc::vec;
use alloc::vec::Vec;

use crate::lu::{rank, solve_in_span};
use crate::matrix::FieldMatrix;

pub const DEFAULT_MAX_SUBSET: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    Figure8,
    Annulus,
}

/// Column subsets (indices into the checked matrix) with a nonzero kernel
/// vector for each, aligned with the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub subsets: Vec<Vec<usize>>,
    pub kernels: Vec<Vec<u32>>,
    /// Figure-8 only: a column in both subsets with nonzero coefficient in
    /// both kernel vectors.
    pub common: Option<usize>,
    /// Figure-8 only: the second subset is the first one plus a column that
    /// does not take part in its dependency.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub kind: ConstructionKind,
    pub found: bool,
    pub witness: Option<Witness>,
}

impl ConstructionReport {
    fn none(kind: ConstructionKind) -> Self {
        Self { kind, found: false, witness: None }
    }
}

/// Looks for a circuit of at most `max_subset` columns.
pub fn check_annulus(h: &FieldMatrix, max_subset: usize) -> ConstructionReport {
    let kind = ConstructionKind::Annulus;
    if rank(h) == h.cols() {
        return ConstructionReport::none(kind);
    }
    let circuit = first_circuit_by_elimination(h)
        .filter(|c| c.0.len() <= max_subset)
        .or_else(|| circuits(h, max_subset).into_iter().next());
    match circuit {
        Some((subset, kernel)) => ConstructionReport {
            kind,
            found: true,
            witness: Some(Witness { subsets: vec![subset], kernels: vec![kernel], common: None, degenerate: false }),
        },
        None => ConstructionReport::none(kind),
    }
}

/// Looks for two distinct dependent column sets of at most `max_subset`
/// columns whose dependencies share a column.
///
/// Two circuits with a common column are preferred. Failing that, a circuit
/// `C` together with `C` plus one outside column qualifies when it fits in
/// `max_subset`; the witness is then marked degenerate.
pub fn check_figure8(h: &FieldMatrix, max_subset: usize) -> ConstructionReport {
    let kind = ConstructionKind::Figure8;
    if rank(h) == h.cols() {
        return ConstructionReport::none(kind);
    }
    let all = circuits(h, max_subset);
    for (a, (sa, ka)) in all.iter().enumerate() {
        for (sb, kb) in &all[a + 1..] {
            if let Some(&common) = sa.iter().find(|c| sb.contains(c)) {
                return ConstructionReport {
                    kind,
                    found: true,
                    witness: Some(Witness {
                        subsets: vec![sa.clone(), sb.clone()],
                        kernels: vec![ka.clone(), kb.clone()],
                        common: Some(common),
                        degenerate: false,
                    }),
                };
            }
        }
    }
    for (s, k) in &all {
        if s.len() < max_subset {
            if let Some(extra) = (0..h.cols()).find(|c| !s.contains(c)) {
                let mut bigger = s.clone();
                let pos = bigger.partition_point(|&c| c < extra);
                bigger.insert(pos, extra);
                let mut kb = k.clone();
                kb.insert(pos, 0);
                return ConstructionReport {
                    kind,
                    found: true,
                    witness: Some(Witness {
                        subsets: vec![s.clone(), bigger],
                        kernels: vec![k.clone(), kb],
                        common: Some(s[0]),
                        degenerate: true,
                    }),
                };
            }
        }
    }
    ConstructionReport::none(kind)
}

/// True if `kernel` is a nonzero vector with `h[:, subset] · kernel = 0`.
pub fn verify_dependence(h: &FieldMatrix, subset: &[usize], kernel: &[u32]) -> bool {
    subset.len() == kernel.len()
        && kernel.iter().any(|&v| v != 0)
        && h.select_columns(subset).mul_vec(kernel).iter().all(|&v| v == 0)
}

/// Scans columns left to right; the first column in the span of the
/// independent ones before it closes a circuit with the columns its unique
/// representation uses.
fn first_circuit_by_elimination(h: &FieldMatrix) -> Option<(Vec<usize>, Vec<u32>)> {
    let f = h.field();
    let mut independent: Vec<usize> = Vec::new();
    for j in 0..h.cols() {
        let col = h.column(j);
        let basis = h.select_columns(&independent);
        match solve_in_span(&basis, &col) {
            None => independent.push(j),
            Some(x) => {
                let mut pairs: Vec<(usize, u32)> = independent
                    .iter()
                    .zip(&x)
                    .filter(|(_, &c)| c != 0)
                    .map(|(&i, &c)| (i, f.neg(c)))
                    .collect();
                pairs.push((j, 1));
                return Some(pairs.into_iter().unzip());
            }
        }
    }
    None
}

/// Every circuit of at most `max_size` columns, by size then lexicographically.
pub fn circuits(h: &FieldMatrix, max_size: usize) -> Vec<(Vec<usize>, Vec<u32>)> {
    let mut out = Vec::new();
    let n = h.cols();
    for size in 1..=max_size.min(n) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if let Some(kernel) = circuit_kernel(h, &subset) {
                out.push((subset.clone(), kernel));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    out
}

/// The kernel vector of `h[:, subset]` if the kernel is one-dimensional with
/// full support.
fn circuit_kernel(h: &FieldMatrix, subset: &[usize]) -> Option<Vec<u32>> {
    let kernel = h.select_columns(subset).kernel();
    match kernel.as_slice() {
        [k] if k.iter().all(|&v| v != 0) => Some(k.clone()),
        _ => None,
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
