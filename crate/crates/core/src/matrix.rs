//! Dense matrices over `F_p`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::field::PrimeField;

/// A dense, row-major matrix over a prime field.
///
/// Matrices with zero rows or zero columns are legal; empty induced maps show
/// up whenever a sub-sample has no homology in the studied degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting out-of-range values.
    pub fn from_entries(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(invalid(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&v| !field.contains(v)) {
            return Err(invalid(format!("entry {bad} is not a residue mod {}", field.modulus())));
        }
        Ok(Self { field, rows, cols, entries })
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    ///
    /// Panics if the rows are ragged; intended for literals in tests and
    /// fixtures.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&v| field.element(v)));
        }
        Self { field, rows: rows.len(), cols, entries }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(invalid(format!("column {j} has length {} but {rows} rows expected", c.len())));
            }
            for (i, &v) in c.iter().enumerate() {
                if !field.contains(v) {
                    return Err(invalid(format!("entry {v} is not a residue mod {}", field.modulus())));
                }
                m.entries[i * m.cols + j] = v;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Matrix product. Panics on mismatched shapes or fields.
    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = f.add(out.entries[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols, "shape mismatch in product");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Entrywise `nonzero -> 1`, `zero -> 0`.
    pub fn binarize(&self) -> Self {
        let one = 1 % self.field.modulus();
        Self {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&v| if v == 0 { 0 } else { one }).collect(),
        }
    }

    /// Horizontal concatenation. Panics if row counts differ.
    pub fn hconcat(&self, rhs: &FieldMatrix) -> Self {
        assert_eq!(self.rows, rhs.rows, "row mismatch in concatenation");
        let mut columns: Vec<Vec<u32>> = self.columns().collect();
        columns.extend(rhs.columns());
        Self::from_columns(self.field, self.rows, &columns).expect("shapes checked")
    }

    /// Appends a column. Panics if its length differs from the row count.
    pub fn push_column(&mut self, column: &[u32]) {
        assert_eq!(column.len(), self.rows, "column length mismatch");
        let new_cols = self.cols + 1;
        let mut entries = Vec::with_capacity(self.rows * new_cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.push(column[i]);
        }
        self.entries = entries;
        self.cols = new_cols;
    }

    /// Appends `n` zero rows at the bottom.
    pub fn push_zero_rows(&mut self, n: usize) {
        self.entries.extend(core::iter::repeat_n(0, n * self.cols));
        self.rows += n;
    }

    /// The sub-matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                m.entries[i * indices.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    /// The leading `rows` rows.
    pub fn top_rows(&self, rows: usize) -> Self {
        let rows = rows.min(self.rows);
        Self {
            field: self.field,
            rows,
            cols: self.cols,
            entries: self.entries[..rows * self.cols].to_vec(),
        }
    }

    /// A basis of the right kernel `{x : A x = 0}`, one vector per free column
    /// of the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            a.swap_rows(r, pr);
            let inv = f.inv(a.get(r, c));
            for j in 0..a.cols {
                let v = a.get(r, j);
                a.set(r, j, f.mul(v, inv));
            }
            for i in 0..a.rows {
                let factor = a.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..a.cols {
                        let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in (0..a.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut x = vec![0u32; a.cols];
            x[free] = 1 % f.modulus();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = f.neg(a.get(row, free));
            }
            basis.push(x);
        }
        basis
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows reordered so that row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &src in perm {
            entries.extend_from_slice(self.row(src));
        }
        Self { field: self.field, rows: self.rows, cols: self.cols, entries }
    }

    /// Columns reordered so that column `j` of the result is column `perm[j]`
    /// of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        self.select_columns(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F3: PrimeField = PrimeField::F3;

    #[test]
    fn binarize_examples() {
        let m = FieldMatrix::from_rows(F3, &[[0], [0], [2]]);
        assert_eq!(m.binarize(), FieldMatrix::from_rows(F3, &[[0], [0], [1]]));
        let z = FieldMatrix::zeros(F3, 2, 3);
        assert_eq!(z.binarize(), z);
        let m = FieldMatrix::from_rows(F3, &[[2, 2, 0]]);
        assert_eq!(m.binarize(), FieldMatrix::from_rows(F3, &[[1, 1, 0]]));
    }

    #[test]
    fn from_entries_validates() {
        assert!(FieldMatrix::from_entries(F3, 1, 2, vec![0, 3]).is_err());
        assert!(FieldMatrix::from_entries(F3, 1, 2, vec![0]).is_err());
        let e = FieldMatrix::from_entries(F3, 3, 0, vec![]).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.rows(), 3);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // c2 = c0 + c1
        let m = FieldMatrix::from_rows(F3, &[[1, 0, 1], [0, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|&v| v == 0));
        assert!(k[0].iter().all(|&v| v != 0));
    }

    #[test]
    fn push_column_and_rows() {
        let mut m = FieldMatrix::identity(F3, 2);
        m.push_column(&[1, 1]);
        m.push_zero_rows(1);
        assert_eq!(m.rows(), 3);
        assert_eq!(m.column(2), vec![1, 1, 0]);
    }
}
