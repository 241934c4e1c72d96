//! Boundary-matrix reduction and homology-revealing bases.
//!
//! Each boundary `∂_k` is reduced left to right by adding earlier columns
//! whenever two columns share their lowest nonzero row. The result is
//! `R_k = ∂_k U_k` with `U_k` unit upper triangular. Column `j` of `U_k`
//! represents a homology class exactly when `R_k[:, j] = 0` and `j` is not the
//! lowest row of any column of `R_{k+1}`; those `j` form `I_k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::sparse::{SparseColumn, SparseMatrix};

const NO_PIVOT: u32 = u32::MAX;

/// `C_0 <- C_1 <- ... <- C_top` over `F_p`.
///
/// `boundaries[k - 1]` is `∂_k : C_k -> C_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    field: PrimeField,
    sizes: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks shapes only; `∂∂ = 0` is checked by [`reduce`].
    pub fn new(field: PrimeField, sizes: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(invalid("a chain complex needs at least C_0"));
        }
        if boundaries.len() + 1 != sizes.len() {
            return Err(invalid(format!(
                "{} chain groups need {} boundary maps, got {}",
                sizes.len(),
                sizes.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.field() != field {
                return Err(invalid(format!("boundary d_{k} lives over a different field")));
            }
            if d.rows() != sizes[k - 1] || d.cols() != sizes[k] {
                return Err(invalid(format!(
                    "boundary d_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    sizes[k - 1],
                    sizes[k]
                )));
            }
        }
        Ok(Self { field, sizes, boundaries })
    }

    /// Sizes are read off the matrix shapes.
    pub fn from_dense(field: PrimeField, boundaries: &[FieldMatrix]) -> Result<Self> {
        let Some(first) = boundaries.first() else {
            return Err(invalid("at least one boundary map is required"));
        };
        let mut sizes = vec![first.rows()];
        sizes.extend(boundaries.iter().map(FieldMatrix::cols));
        Self::new(field, sizes, boundaries.iter().map(SparseMatrix::from_dense).collect())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Highest chain degree present.
    pub fn top_dim(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `∂_k` for `1 <= k <= top_dim`.
    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k - 1]
    }
}

/// Betti numbers `(β_0, β_1, ...)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// `β_k`, zero past the computed range.
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// The data a reduction leaves behind for one chain complex.
#[derive(Debug, Clone)]
pub struct ReducedChainComplex {
    field: PrimeField,
    sizes: Vec<usize>,
    /// `r[k] = R_k`; `r[0]` is the zero map out of `C_0`.
    r: Vec<SparseMatrix>,
    /// `u[k] = U_k` when it was kept.
    u: Vec<Option<SparseMatrix>>,
    /// `pivot_col[k][i]` is the column of `R_{k+1}` whose lowest row is `i`.
    pivot_col: Vec<Vec<u32>>,
    /// `I_k` for every degree below the top one.
    homology: Vec<Vec<usize>>,
}

/// Reduces every boundary map, keeping `U_k` below the top degree.
///
/// Homology is reported for degrees `0..top_dim`; the top degree has no
/// `∂_{top+1}` to account for, so its cycles are not classified.
pub fn reduce(complex: &ChainComplex) -> Result<ReducedChainComplex> {
    reduce_with(complex, false)
}

/// Like [`reduce`], also keeping `U_top`.
pub fn reduce_full(complex: &ChainComplex) -> Result<ReducedChainComplex> {
    reduce_with(complex, true)
}

fn reduce_with(complex: &ChainComplex, keep_top_u: bool) -> Result<ReducedChainComplex> {
    check_chain_complex(complex)?;
    let field = complex.field;
    let top = complex.top_dim();

    let mut r = vec![SparseMatrix::zeros(field, 0, complex.size(0))];
    let mut u = vec![Some(SparseMatrix::identity(field, complex.size(0)))];
    let mut pivot_col = Vec::with_capacity(top + 1);
    for k in 1..=top {
        let d = complex.boundary(k);
        let track = k < top || keep_top_u;
        let reduced = reduce_columns(field, d.rows(), d.columns().iter().cloned(), track, None);
        pivot_col.push(reduced.pivots);
        r.push(SparseMatrix::new(field, d.rows(), reduced.r));
        u.push(reduced.u.map(|cols| SparseMatrix::new(field, d.cols(), cols)));
    }
    pivot_col.push(vec![NO_PIVOT; complex.size(top)]);

    let homology = (0..top)
        .map(|k| {
            (0..complex.size(k))
                .filter(|&j| r[k].column(j).is_zero() && pivot_col[k][j] == NO_PIVOT)
                .collect()
        })
        .collect();

    Ok(ReducedChainComplex { field, sizes: complex.sizes.clone(), r, u, pivot_col, homology })
}

fn check_chain_complex(complex: &ChainComplex) -> Result<()> {
    for k in 1..complex.top_dim() {
        let (lower, upper) = (complex.boundary(k), complex.boundary(k + 1));
        for (j, c) in upper.columns().iter().enumerate() {
            if !lower.mul_column(c).is_zero() {
                return Err(Error::NotAChainComplex { k, k_plus_one: k + 1, column: j });
            }
        }
    }
    Ok(())
}

pub(crate) struct Reduction {
    pub r: Vec<SparseColumn>,
    pub u: Option<Vec<SparseColumn>>,
    /// Row -> column whose lowest entry sits in that row, or `NO_PIVOT`.
    pub pivots: Vec<u32>,
}

/// Standard left-to-right column reduction.
///
/// Columns flagged in `cleared` are known to reduce to zero and are skipped;
/// this is only valid when `U` is not tracked.
pub(crate) fn reduce_columns(
    field: PrimeField,
    rows: usize,
    columns: impl Iterator<Item = SparseColumn>,
    track_u: bool,
    cleared: Option<&[bool]>,
) -> Reduction {
    let mut pivots = vec![NO_PIVOT; rows];
    let mut r: Vec<SparseColumn> = Vec::new();
    let mut u: Vec<SparseColumn> = Vec::new();
    debug_assert!(!(track_u && cleared.is_some()));
    for (j, mut col) in columns.enumerate() {
        if cleared.is_some_and(|c| c[j]) {
            r.push(SparseColumn::new());
            continue;
        }
        let mut ucol = SparseColumn::unit(j);
        while let Some((low, v)) = col.low() {
            let pj = pivots[low];
            if pj == NO_PIVOT {
                pivots[low] = j as u32;
                break;
            }
            let pcol = &r[pj as usize];
            let pv = pcol.low().expect("pivot columns are nonzero").1;
            let alpha = field.neg(field.div(v, pv));
            col.axpy(field, alpha, pcol);
            if track_u {
                ucol.axpy(field, alpha, &u[pj as usize]);
            }
        }
        r.push(col);
        if track_u {
            u.push(ucol);
        }
    }
    Reduction { r, u: track_u.then_some(u), pivots }
}

impl ReducedChainComplex {
    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn top_dim(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Number of `k`-chains (simplices of dimension `k`).
    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    /// `R_k`.
    pub fn r(&self, k: usize) -> &SparseMatrix {
        &self.r[k]
    }

    /// `U_k`, if it was kept.
    pub fn u(&self, k: usize) -> Option<&SparseMatrix> {
        self.u.get(k).and_then(Option::as_ref)
    }

    /// `I_k`, ascending. Empty for the top degree and beyond.
    pub fn homology_indices(&self, k: usize) -> &[usize] {
        self.homology.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn betti(&self) -> BettiVector {
        BettiVector(self.homology.iter().map(Vec::len).collect())
    }

    /// The column of `R_{k+1}` whose lowest nonzero row is `row`.
    pub fn pivot_column(&self, k: usize, row: usize) -> Option<usize> {
        self.pivot_col
            .get(k)
            .and_then(|p| p.get(row))
            .and_then(|&c| (c != NO_PIVOT).then_some(c as usize))
    }

    /// Preferred representative of the `i`-th basis class of `H_k`: the column
    /// of `U_k` at `I_k[i]`.
    pub fn representative(&self, k: usize, i: usize) -> Result<&SparseColumn> {
        let u = self.u(k).ok_or_else(|| invalid(format!("U_{k} was not kept")))?;
        let j = *self
            .homology_indices(k)
            .get(i)
            .ok_or_else(|| invalid(format!("H_{k} has no generator {i}")))?;
        Ok(u.column(j))
    }

    /// `U_k^{-1} y` by back substitution on the unit upper triangular `U_k`.
    pub fn apply_u_inverse(&self, k: usize, y: &SparseColumn) -> Result<SparseColumn> {
        let u = self.u(k).ok_or_else(|| invalid(format!("U_{k} was not kept")))?;
        if y.low().is_some_and(|(r, _)| r >= u.rows()) {
            return Err(invalid(format!("vector does not fit C_{k}")));
        }
        let f = self.field;
        let mut rest: BTreeMap<u32, u32> = y.entries().iter().copied().collect();
        let mut out = Vec::new();
        while let Some((j, zj)) = rest.pop_last() {
            out.push((j, zj));
            for &(row, v) in u.column(j as usize).entries() {
                if row == j {
                    continue;
                }
                let e = rest.entry(row).or_insert(0);
                *e = f.sub(*e, f.mul(zj, v));
                if *e == 0 {
                    rest.remove(&row);
                }
            }
        }
        out.reverse();
        Ok(SparseColumn::from_sorted(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lu::rank;
    use crate::rips::SimplicialComplex;
    use proptest::prelude::*;

    const F3: PrimeField = PrimeField::F3;

    fn betti_of(c: &SimplicialComplex) -> Vec<usize> {
        reduce(&c.chain_complex(F3)).unwrap().betti().0
    }

    // rank-nullity with dense elimination, independent of the reduction
    fn oracle_betti(c: &SimplicialComplex) -> Vec<usize> {
        let cc = c.chain_complex(F3);
        let r1 = rank(&cc.boundary(1).to_dense());
        let r2 = rank(&cc.boundary(2).to_dense());
        alloc::vec![c.count(0) - r1, c.count(1) - r1 - r2]
    }

    fn check_factorization(c: &ChainComplex) {
        let red = reduce_full(c).unwrap();
        for k in 1..=c.top_dim() {
            let du = c.boundary(k).mul(red.u(k).unwrap());
            assert_eq!(&du, red.r(k));
            assert!(red.r(k).is_reduced());
            assert!(red.u(k).unwrap().is_unit_upper_triangular());
        }
    }

    #[test]
    fn single_vertex() {
        let c = SimplicialComplex::closure(1, &[[0u32]]).unwrap();
        assert_eq!(betti_of(&c), [1, 0]);
    }

    #[test]
    fn square_cycle() {
        let c = SimplicialComplex::closure(4, &[[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        assert_eq!(betti_of(&c), [1, 1]);
    }

    #[test]
    fn filled_triangle_is_contractible() {
        let c = SimplicialComplex::closure(3, &[[0u32, 1, 2]]).unwrap();
        assert_eq!(betti_of(&c), [1, 0]);
        check_factorization(&c.chain_complex(F3));
    }

    #[test]
    fn wedge_of_two_squares() {
        let c = SimplicialComplex::closure(
            7,
            &[[0u32, 1], [1, 2], [2, 3], [0, 3], [0, 4], [4, 5], [5, 6], [0, 6]],
        )
        .unwrap();
        assert_eq!(betti_of(&c), [1, 2]);
    }

    #[test]
    fn ring_of_eight_triangles() {
        // inner square 0..4, outer square 4..8
        let mut tris = Vec::new();
        for i in 0..4u32 {
            let (a, b) = (i, (i + 1) % 4);
            tris.push([a, b, a + 4]);
            tris.push([b, a + 4, b + 4]);
        }
        let c = SimplicialComplex::closure(8, &tris).unwrap();
        assert_eq!(c.count(2), 8);
        assert_eq!(betti_of(&c), [1, 1]);
    }

    #[test]
    fn two_isolated_vertices() {
        let c = SimplicialComplex::closure(2, &[[0u32], [1]]).unwrap();
        assert_eq!(betti_of(&c), [2, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = FieldMatrix::from_rows(F3, &[[2], [1]]);
        let d2 = FieldMatrix::from_rows(F3, &[[1]]);
        let c = ChainComplex::from_dense(F3, &[d1, d2]).unwrap();
        assert!(matches!(reduce(&c), Err(Error::NotAChainComplex { .. })));
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = SparseMatrix::zeros(F3, 2, 1);
        assert!(ChainComplex::new(F3, alloc::vec![3, 1], alloc::vec![d1]).is_err());
    }

    #[test]
    fn u_inverse_round_trips() {
        let c = SimplicialComplex::closure(5, &[&[0u32, 1, 2][..], &[1, 2, 3], &[3, 4], &[0, 4]]).unwrap();
        let red = reduce(&c.chain_complex(F3)).unwrap();
        let u = red.u(1).unwrap();
        for j in 0..c.count(1) {
            let col = u.column(j);
            assert_eq!(red.apply_u_inverse(1, col).unwrap(), SparseColumn::unit(j));
        }
    }

    #[test]
    fn betti_display() {
        assert_eq!(alloc::format!("{}", BettiVector(alloc::vec![1, 2])), "(1, 2)");
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        (3usize..8).prop_flat_map(|n| {
            let tri = (0..n as u32, 0..n as u32, 0..n as u32);
            let edge = (0..n as u32, 0..n as u32);
            (
                Just(n),
                proptest::collection::vec(edge, 0..12),
                proptest::collection::vec(tri, 0..5),
            )
                .prop_map(|(n, edges, tris)| {
                    let mut simplices: Vec<Vec<u32>> = Vec::new();
                    simplices.extend(edges.into_iter().filter(|(a, b)| a != b).map(|(a, b)| alloc::vec![a, b]));
                    simplices.extend(
                        tris.into_iter()
                            .filter(|(a, b, c)| a != b && b != c && a != c)
                            .map(|(a, b, c)| alloc::vec![a, b, c]),
                    );
                    SimplicialComplex::closure(n, &simplices).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn betti_matches_rank_nullity(c in arb_complex()) {
            prop_assert_eq!(betti_of(&c), oracle_betti(&c));
        }

        #[test]
        fn reduction_factorizes(c in arb_complex()) {
            check_factorization(&c.chain_complex(F3));
        }

        #[test]
        fn euler_characteristic(c in arb_complex()) {
            let cc = c.chain_complex(F3);
            let b = betti_of(&c);
            let ker2 = c.count(2) - rank(&cc.boundary(2).to_dense());
            let lhs = b[0] as i64 - b[1] as i64 + ker2 as i64;
            let rhs = c.count(0) as i64 - c.count(1) as i64 + c.count(2) as i64;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
