//! Induced maps on homology along a simplicial inclusion.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::homology::ReducedChainComplex;
use crate::matrix::FieldMatrix;
use crate::rips::SimplicialComplex;
use crate::sparse::{SparseColumn, SparseMatrix};

/// The matrix of `H_k(sub) -> H_k(full)` in the preferred bases.
///
/// Rows follow `I_k` of the full complex, columns `I_k` of the sub-complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub matrix: FieldMatrix,
    pub k: usize,
    pub sample_id: String,
    /// Number of points in the sub-sample.
    pub sample_size: usize,
}

impl InducedMap {
    pub fn new(matrix: FieldMatrix, k: usize, sample_id: impl Into<String>, sample_size: usize) -> Self {
        Self { matrix, k, sample_id: sample_id.into(), sample_size }
    }

    pub fn with_sample(mut self, sample_id: impl Into<String>, sample_size: usize) -> Self {
        self.sample_id = sample_id.into();
        self.sample_size = sample_size;
        self
    }
}

/// The chain map `C_k(sub) -> C_k(full)` sending each simplex to its image.
///
/// `vertex_map[v]` is the full-complex vertex of sub-vertex `v`; `None`
/// means the identity. Images are re-sorted, with the sign of the sorting
/// permutation, so non-monotone vertex maps are fine.
pub fn inclusion_chain_map(
    sub: &SimplicialComplex,
    full: &SimplicialComplex,
    vertex_map: Option<&[u32]>,
    k: usize,
    field: PrimeField,
) -> Result<SparseMatrix> {
    if let Some(map) = vertex_map {
        if map.len() != sub.vertex_count() {
            return Err(invalid(format!(
                "vertex map has {} entries for {} vertices",
                map.len(),
                sub.vertex_count()
            )));
        }
    }
    if k > 2 {
        return Err(invalid(format!("no chains in degree {k}")));
    }
    let mut columns = Vec::with_capacity(sub.count(k));
    for i in 0..sub.count(k) {
        let simplex = sub.simplex(k, i);
        let mut image: Vec<u32> = match vertex_map {
            Some(map) => simplex.iter().map(|&v| map[v as usize]).collect(),
            None => simplex,
        };
        let odd = sort_parity(&mut image);
        let missing = || Error::MissingSimplex { simplex: image.clone() };
        if image.windows(2).any(|w| w[0] == w[1]) {
            return Err(missing());
        }
        let row = full.simplex_index(&image).ok_or_else(missing)?;
        let value = if odd { field.neg(1) } else { 1 };
        columns.push(SparseColumn::from_sorted(alloc::vec![(row as u32, value)]));
    }
    Ok(SparseMatrix::new(field, full.count(k), columns))
}

/// Sorts in place, returning whether the permutation was odd.
fn sort_parity(v: &mut [u32]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

/// Caches `∂̃_{k+1} = U_k^{-1} R_{k+1}` columns of a codomain so several
/// induced maps into the same complex share the work.
pub struct Codomain<'a> {
    full: &'a ReducedChainComplex,
    k: usize,
    reduced_boundary: BTreeMap<usize, SparseColumn>,
}

impl<'a> Codomain<'a> {
    pub fn new(full: &'a ReducedChainComplex, k: usize) -> Result<Self> {
        if full.u(k).is_none() {
            return Err(invalid(format!("the codomain kept no U_{k}")));
        }
        if k >= full.top_dim() {
            return Err(invalid(format!("the codomain has no homology data in degree {k}")));
        }
        Ok(Self { full, k, reduced_boundary: BTreeMap::new() })
    }

    fn reduced_boundary(&mut self, col: usize) -> Result<&SparseColumn> {
        if !self.reduced_boundary.contains_key(&col) {
            let r = self.full.r(self.k + 1).column(col);
            let v = self.full.apply_u_inverse(self.k, r)?;
            self.reduced_boundary.insert(col, v);
        }
        Ok(&self.reduced_boundary[&col])
    }

    /// Image of one cycle `z` of the codomain in the basis `I_k`.
    pub fn coordinates(&mut self, z: &SparseColumn) -> Result<Vec<u32>> {
        let f = self.full.field();
        let k = self.k;
        let mut y = self.full.apply_u_inverse(k, z)?;
        // Walk y from its lowest entry upward, clearing pivot rows of R_{k+1}.
        let mut kept: Vec<(u32, u32)> = Vec::new();
        while let Some((j, yj)) = y.low() {
            match self.full.pivot_column(k, j) {
                Some(c) => {
                    let d = self.reduced_boundary(c)?;
                    let (dj, dv) = d.low().expect("pivot columns are nonzero");
                    debug_assert_eq!(dj, j);
                    let alpha = f.neg(f.div(yj, dv));
                    y.axpy(f, alpha, d);
                }
                None => {
                    kept.push((j as u32, yj));
                    y.retain_rows(|r| r != j);
                }
            }
        }
        let indices = self.full.homology_indices(k);
        let mut out = alloc::vec![0u32; indices.len()];
        for (j, v) in kept {
            let pos = indices
                .binary_search(&(j as usize))
                .map_err(|_| invalid(format!("image is not a cycle: residue at chain {j}")))?;
            out[pos] = v;
        }
        Ok(out)
    }

    /// The induced map of `f : C_k(sub) -> C_k(full)`.
    pub fn induced(&mut self, sub: &ReducedChainComplex, f: &SparseMatrix) -> Result<FieldMatrix> {
        let k = self.k;
        let field = self.full.field();
        if f.field() != field || sub.field() != field {
            return Err(invalid("chain map, domain and codomain must share a field"));
        }
        if f.rows() != self.full.size(k) || f.cols() != sub.size(k) {
            return Err(invalid(format!(
                "chain map is {}x{} but C_{k} sizes are {} (full) and {} (sub)",
                f.rows(),
                f.cols(),
                self.full.size(k),
                sub.size(k)
            )));
        }
        let rows = self.full.homology_indices(k).len();
        let generators = sub.homology_indices(k).len();
        let mut columns = Vec::with_capacity(generators);
        for i in 0..generators {
            let x = sub.representative(k, i)?;
            let z = f.mul_column(x);
            columns.push(self.coordinates(&z)?);
        }
        FieldMatrix::from_columns(field, rows, &columns)
    }
}

/// Computes the matrix of `H_k(sub) -> H_k(full)` induced by the chain map `f`.
///
/// Each sub-generator is pushed through `f`, rewritten in the full complex's
/// `U_k` basis, and reduced against `∂̃_{k+1}` from the highest index down; the
/// surviving coefficients at `I_k` form the column.
pub fn induced_on_homology(
    sub: &ReducedChainComplex,
    full: &ReducedChainComplex,
    f: &SparseMatrix,
    k: usize,
) -> Result<InducedMap> {
    let matrix = Codomain::new(full, k)?.induced(sub, f)?;
    Ok(InducedMap { matrix, k, sample_id: String::new(), sample_size: sub.size(0) })
}
