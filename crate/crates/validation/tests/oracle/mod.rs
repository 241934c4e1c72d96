//! Brute-force reference computations over F_p, written without the library's
//! linear algebra. Matrices are dense row-major `Vec<Vec<u32>>`.

#![allow(dead_code)]

use std::collections::HashSet;

pub type Dense = Vec<Vec<u32>>;

pub fn from_library(m: &subhom_core::FieldMatrix) -> Dense {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn columns_of(m: &Dense, cols: usize) -> Vec<Vec<u32>> {
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).expect("nonzero element of a prime field")
}

/// Row reduction to echelon form; returns the number of pivots.
pub fn rank(m: &Dense, p: u32) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a[i][c].is_multiple_of(p)) else {
            continue;
        };
        a.swap(r, pivot);
        let s = inv(a[r][c] % p, p);
        for v in a[r].iter_mut() {
            *v = (*v % p) * s % p;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_multiple_of(p) {
                let f = a[i][c] % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] % p + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn mul(a: &Dense, b: &Dense, inner: usize, cols: usize, p: u32) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] as u64 * b[k][j] as u64).sum::<u64>() % p as u64)
                .map(|v| v as u32)
                .collect()
        })
        .collect()
}

/// The column span as an explicit set, grown one column at a time by adding
/// every multiple of it to everything reached so far.
pub fn span(cols: &[Vec<u32>], rows: usize, p: u32) -> HashSet<Vec<u32>> {
    let mut reached: HashSet<Vec<u32>> = HashSet::from([vec![0u32; rows]]);
    for c in cols {
        let mut next = HashSet::new();
        for s in &reached {
            for a in 0..p {
                next.insert(s.iter().zip(c).map(|(&si, &ci)| (si + a * ci) % p).collect::<Vec<u32>>());
            }
        }
        reached = next;
    }
    reached
}

/// `log_p |span|`.
pub fn rank_by_enumeration(cols: &[Vec<u32>], rows: usize, p: u32) -> usize {
    let mut size = span(cols, rows, p).len();
    let mut r = 0;
    while size > 1 {
        assert_eq!(size % p as usize, 0);
        size /= p as usize;
        r += 1;
    }
    r
}

/// Boundary of `k`-simplices into `(k-1)`-simplices with the alternating sign
/// convention, built from the simplex lists alone.
pub fn boundary(faces: &[Vec<u32>], simplices: &[Vec<u32>], p: u32) -> Dense {
    let mut m = vec![vec![0u32; simplices.len()]; faces.len()];
    for (j, s) in simplices.iter().enumerate() {
        for drop in 0..s.len() {
            let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            let row = faces.iter().position(|f| *f == face).expect("closed under faces");
            m[row][j] = if drop % 2 == 0 { 1 } else { p - 1 };
        }
    }
    m
}

/// Betti numbers by rank-nullity on the oracle boundaries.
pub fn betti(vertices: usize, edges: &[Vec<u32>], triangles: &[Vec<u32>], p: u32) -> Vec<usize> {
    let verts: Vec<Vec<u32>> = (0..vertices as u32).map(|v| vec![v]).collect();
    let d1 = boundary(&verts, edges, p);
    let d2 = boundary(edges, triangles, p);
    let r1 = if edges.is_empty() { 0 } else { rank(&d1, p) };
    let r2 = if triangles.is_empty() || edges.is_empty() { 0 } else { rank(&d2, p) };
    vec![vertices - r1, edges.len() - r1 - r2]
}
