//! LU decomposition with row and column pivoting over `F_p`.
//!
//! Induced-map matrices routinely have zero leading columns or repeated rows
//! (e.g. `[[0,1,0],[0,1,0],[0,0,0]]`), so pivoting on rows alone or columns
//! alone can stall. The pivot is the first nonzero entry met in a row-major
//! scan of the remaining submatrix, which makes every factorization
//! reproducible.

use alloc::vec::Vec;

use crate::field::PrimeField;
use crate::matrix::FieldMatrix;

/// `P_row · A · P_col = L · U`.
///
/// `row_perm[i]` is the row of `A` that lands in position `i`, and
/// `col_perm[j]` is the column of `A` that lands in position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuFactorization {
    /// Unit lower triangular, `rows x rows`.
    pub l: FieldMatrix,
    /// Upper trapezoidal, `rows x cols`; rows at or below `rank` are zero.
    pub u: FieldMatrix,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub rank: usize,
}

impl LuFactorization {
    pub fn field(&self) -> PrimeField {
        self.u.field()
    }

    /// `P_row · A · P_col`, computed from the original matrix.
    pub fn permuted(&self, a: &FieldMatrix) -> FieldMatrix {
        a.permute_rows(&self.row_perm).permute_cols(&self.col_perm)
    }
}

pub fn lu_full_pivot(a: &FieldMatrix) -> LuFactorization {
    let f = a.field();
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = a.clone();
    let mut l = FieldMatrix::identity(f, rows);
    let mut row_perm: Vec<usize> = (0..rows).collect();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;

    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = first_nonzero(&u, k) else {
            break;
        };
        u.swap_rows(k, pi);
        row_perm.swap(k, pi);
        // Multipliers already stored in L travel with their rows.
        for j in 0..k {
            let (a_kj, a_pj) = (l.get(k, j), l.get(pi, j));
            l.set(k, j, a_pj);
            l.set(pi, j, a_kj);
        }
        u.swap_cols(k, pj);
        col_perm.swap(k, pj);

        let pivot_inv = f.inv(u.get(k, k));
        for i in k + 1..rows {
            let below = u.get(i, k);
            if below == 0 {
                continue;
            }
            let factor = f.mul(below, pivot_inv);
            l.set(i, k, factor);
            for j in k..cols {
                let v = f.sub(u.get(i, j), f.mul(factor, u.get(k, j)));
                u.set(i, j, v);
            }
        }
        rank += 1;
    }

    LuFactorization { l, u, row_perm, col_perm, rank }
}

fn first_nonzero(m: &FieldMatrix, k: usize) -> Option<(usize, usize)> {
    (k..m.rows()).find_map(|i| (k..m.cols()).find(|&j| m.get(i, j) != 0).map(|j| (i, j)))
}

pub fn rank(a: &FieldMatrix) -> usize {
    lu_full_pivot(a).rank
}

/// Coefficients `x` with `basis · x = b`, or `None` when `b` lies outside the
/// column span.
///
/// A right-hand side whose length differs from the basis row count is
/// reported as `None` as well: the caller treats the vector as new.
pub fn solve_in_span(basis: &FieldMatrix, b: &[u32]) -> Option<Vec<u32>> {
    if b.len() != basis.rows() || b.iter().any(|&v| !basis.field().contains(v)) {
        return None;
    }
    solve_with(&lu_full_pivot(basis), b)
}

/// Solves against an existing factorization.
pub fn solve_with(lu: &LuFactorization, b: &[u32]) -> Option<Vec<u32>> {
    let f = lu.field();
    let (rows, cols) = (lu.u.rows(), lu.u.cols());
    if b.len() != rows {
        return None;
    }

    // L y = P_row b
    let mut y: Vec<u32> = lu.row_perm.iter().map(|&r| b[r]).collect();
    for i in 0..rows {
        let mut acc = y[i];
        for j in 0..i.min(cols) {
            let lij = lu.l.get(i, j);
            if lij != 0 {
                acc = f.sub(acc, f.mul(lij, y[j]));
            }
        }
        y[i] = acc;
    }
    if y[lu.rank..].iter().any(|&v| v != 0) {
        return None;
    }

    // U z = y on the leading rank x rank block, free variables set to zero.
    let mut z = alloc::vec![0u32; cols];
    for i in (0..lu.rank).rev() {
        let mut acc = y[i];
        for j in i + 1..lu.rank {
            acc = f.sub(acc, f.mul(lu.u.get(i, j), z[j]));
        }
        z[i] = f.div(acc, lu.u.get(i, i));
    }

    // x = P_col z
    let mut x = alloc::vec![0u32; cols];
    for (j, &orig) in lu.col_perm.iter().enumerate() {
        x[orig] = z[j];
    }
    Some(x)
}
