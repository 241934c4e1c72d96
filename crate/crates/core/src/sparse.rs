//! Sparse column storage for boundary matrices and their reductions.
//!
//! A full Rips complex on a thousand points easily has a million triangles,
//! so boundary matrices, `R` and `U` are kept column-sparse. Small matrices
//! convert to [`FieldMatrix`] for inspection.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::PrimeField;
use crate::matrix::FieldMatrix;

/// Nonzero entries of one column as `(row, value)`, strictly increasing in
/// `row`, values never zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseColumn {
    entries: Vec<(u32, u32)>,
}

impl SparseColumn {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a column from arbitrary `(row, value)` pairs, summing duplicates
    /// and dropping zeros.
    pub fn from_pairs(field: PrimeField, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable_by_key(|&(r, _)| r);
        let mut entries: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (r, v) in pairs {
            let v = v % field.modulus();
            match entries.last_mut() {
                Some(last) if last.0 == r => last.1 = field.add(last.1, v),
                _ => entries.push((r, v)),
            }
        }
        entries.retain(|&(_, v)| v != 0);
        Self { entries }
    }

    /// Wraps entries that are already sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, v)| v != 0));
        Self { entries }
    }

    pub fn unit(row: usize) -> Self {
        Self { entries: alloc::vec![(row as u32, 1)] }
    }

    pub fn from_dense(values: &[u32]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i as u32, v))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = alloc::vec![0; len];
        for &(r, v) in &self.entries {
            out[r as usize] = v;
        }
        out
    }

    #[inline]
    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// The lowest nonzero entry, i.e. the one with the largest row index.
    #[inline]
    pub fn low(&self) -> Option<(usize, u32)> {
        self.entries.last().map(|&(r, v)| (r as usize, v))
    }

    pub fn get(&self, row: usize) -> u32 {
        self.entries
            .binary_search_by_key(&(row as u32), |&(r, _)| r)
            .map_or(0, |i| self.entries[i].1)
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, field: PrimeField, alpha: u32, other: &SparseColumn) {
        if alpha == 0 || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ra, va)), Some(&&(rb, vb))) => match ra.cmp(&rb) {
                    Ordering::Less => {
                        out.push((ra, va));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((rb, field.mul(alpha, vb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let v = field.add(va, field.mul(alpha, vb));
                        if v != 0 {
                            out.push((ra, v));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&e), None) => {
                    out.push(e);
                    a.next();
                }
                (None, Some(&&(rb, vb))) => {
                    out.push((rb, field.mul(alpha, vb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, field: PrimeField, alpha: u32) {
        if alpha.is_multiple_of(field.modulus()) {
            self.entries.clear();
        } else {
            for e in &mut self.entries {
                e.1 = field.mul(e.1, alpha);
            }
        }
    }

    /// Keeps only the entries whose row satisfies `keep`.
    pub fn retain_rows(&mut self, mut keep: impl FnMut(usize) -> bool) {
        self.entries.retain(|&(r, _)| keep(r as usize));
    }
}

/// A column-sparse matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    rows: usize,
    columns: Vec<SparseColumn>,
}

impl SparseMatrix {
    pub fn new(field: PrimeField, rows: usize, columns: Vec<SparseColumn>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.low().is_none_or(|(r, _)| r < rows)));
        Self { field, rows, columns }
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, columns: alloc::vec![SparseColumn::new(); cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self { field, rows: n, columns: (0..n).map(SparseColumn::unit).collect() }
    }

    pub fn from_dense(m: &FieldMatrix) -> Self {
        Self {
            field: m.field(),
            rows: m.rows(),
            columns: m.columns().map(|c| SparseColumn::from_dense(&c)).collect(),
        }
    }

    pub fn to_dense(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for &(r, v) in c.entries() {
                m.set(r as usize, j, v);
            }
        }
        m
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
        self.columns.len()
    }

    #[inline]
    pub fn column(&self, j: usize) -> &SparseColumn {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseColumn::nnz).sum()
    }

    /// `self · x` for a sparse vector `x` indexed by the columns of `self`.
    pub fn mul_column(&self, x: &SparseColumn) -> SparseColumn {
        let mut pairs = Vec::new();
        for &(j, a) in x.entries() {
            for &(r, v) in self.columns[j as usize].entries() {
                pairs.push((r, self.field.mul(a, v)));
            }
        }
        SparseColumn::from_pairs(self.field, pairs)
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols(), rhs.rows, "shape mismatch in product");
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns: rhs.columns.iter().map(|c| self.mul_column(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseColumn::is_zero)
    }

    /// True if every column has a distinct lowest nonzero row.
    pub fn is_reduced(&self) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        self.columns
            .iter()
            .filter_map(SparseColumn::low)
            .all(|(r, _)| seen.insert(r))
    }

    /// True if square with unit diagonal and nothing below it.
    pub fn is_unit_upper_triangular(&self) -> bool {
        self.rows == self.cols()
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.low() == Some((j, 1)))
    }
}
