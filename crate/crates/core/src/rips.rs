//! Vietoris-Rips complexes up to dimension two and their boundary matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cloud::PointCloud;
use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::homology::ChainComplex;
use crate::sparse::{SparseColumn, SparseMatrix};

/// A simplicial complex of dimension at most two.
///
/// Vertices are `0..vertex_count` in input-point order. Edges and triangles
/// are strictly increasing vertex tuples, each list sorted lexicographically,
/// and every face of a stored simplex is stored too.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    edges: Vec<[u32; 2]>,
    triangles: Vec<[u32; 3]>,
    /// `edges[edge_offsets[a]..edge_offsets[a + 1]]` are the edges whose
    /// smaller vertex is `a`.
    edge_offsets: Vec<usize>,
    threshold: Option<f64>,
}

impl SimplicialComplex {
    /// Validates and stores the given simplices. Lists may be in any order.
    pub fn new(vertex_count: usize, mut edges: Vec<[u32; 2]>, mut triangles: Vec<[u32; 3]>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        triangles.sort_unstable();
        triangles.dedup();
        for e in &edges {
            if e[0] >= e[1] || e[1] as usize >= vertex_count {
                return Err(invalid(format!("edge {e:?} is not an increasing pair of vertices")));
            }
        }
        let complex = Self::from_sorted(vertex_count, edges, triangles, None);
        for t in &complex.triangles {
            if t[0] >= t[1] || t[1] >= t[2] || t[2] as usize >= vertex_count {
                return Err(invalid(format!("triangle {t:?} is not an increasing triple of vertices")));
            }
            for face in [[t[1], t[2]], [t[0], t[2]], [t[0], t[1]]] {
                if complex.edge_index(face[0], face[1]).is_none() {
                    return Err(invalid(format!("face {face:?} of triangle {t:?} is missing")));
                }
            }
        }
        Ok(complex)
    }

    /// The smallest complex containing the given simplices and all of their
    /// faces. Simplices are vertex lists of length 1 to 3 in any order.
    pub fn closure<S: AsRef<[u32]>>(vertex_count: usize, simplices: &[S]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        for s in simplices {
            let mut s = s.as_ref().to_vec();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&v| v as usize >= vertex_count) {
                return Err(invalid(format!("simplex {s:?} references a missing vertex")));
            }
            match s.len() {
                1 => {}
                2 => edges.push([s[0], s[1]]),
                3 => {
                    edges.extend([[s[0], s[1]], [s[0], s[2]], [s[1], s[2]]]);
                    triangles.push([s[0], s[1], s[2]]);
                }
                n => return Err(invalid(format!("simplices of {n} vertices are not supported"))),
            }
        }
        Self::new(vertex_count, edges, triangles)
    }

    fn from_sorted(vertex_count: usize, edges: Vec<[u32; 2]>, triangles: Vec<[u32; 3]>, threshold: Option<f64>) -> Self {
        let mut edge_offsets = vec![0usize; vertex_count + 1];
        for e in &edges {
            edge_offsets[e[0] as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            edge_offsets[i + 1] += edge_offsets[i];
        }
        Self { vertex_count, edges, triangles, edge_offsets, threshold }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    #[inline]
    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    /// The Rips threshold this complex was built at, if any.
    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    /// Number of `k`-simplices.
    pub fn count(&self, k: usize) -> usize {
        match k {
            0 => self.vertex_count,
            1 => self.edges.len(),
            2 => self.triangles.len(),
            _ => 0,
        }
    }

    pub fn simplex(&self, k: usize, index: usize) -> Vec<u32> {
        match k {
            0 => vec![index as u32],
            1 => self.edges[index].to_vec(),
            2 => self.triangles[index].to_vec(),
            _ => panic!("no simplices of dimension {k}"),
        }
    }

    #[inline]
    pub fn edge_index(&self, a: u32, b: u32) -> Option<usize> {
        if a >= b || b as usize >= self.vertex_count {
            return None;
        }
        let (lo, hi) = (self.edge_offsets[a as usize], self.edge_offsets[a as usize + 1]);
        self.edges[lo..hi]
            .binary_search_by_key(&b, |e| e[1])
            .ok()
            .map(|i| lo + i)
    }

    /// Position of a strictly increasing vertex tuple in its dimension's
    /// sorted list.
    pub fn simplex_index(&self, simplex: &[u32]) -> Option<usize> {
        match *simplex {
            [v] => ((v as usize) < self.vertex_count).then_some(v as usize),
            [a, b] => self.edge_index(a, b),
            [a, b, c] if a < b && b < c => self.triangles.binary_search(&[a, b, c]).ok(),
            _ => None,
        }
    }

    /// True if `other`'s simplices (through the identity on vertices) are all
    /// present here.
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        other.vertex_count <= self.vertex_count
            && other.edges.iter().all(|e| self.edge_index(e[0], e[1]).is_some())
            && other.triangles.iter().all(|t| self.triangles.binary_search(t).is_ok())
    }

    pub fn chain_complex(&self, field: PrimeField) -> ChainComplex {
        let sizes = vec![self.vertex_count, self.edges.len(), self.triangles.len()];
        let boundaries = boundary_matrices(self, field).into_iter().map(|b| b.matrix).collect();
        ChainComplex::new(field, sizes, boundaries).expect("boundary shapes follow the simplex counts")
    }
}

/// Builds `R(X, r)`: an edge for every pair at distance `<= r`, a triangle for
/// every triple whose three edges are present (when `max_dim == 2`).
pub fn build_rips(cloud: &PointCloud, r: f64, max_dim: usize) -> Result<SimplicialComplex> {
    build_rips_bounded(cloud, r, max_dim, usize::MAX)
}

/// [`build_rips`] that gives up once the complex would hold more than
/// `max_simplices` simplices in total.
pub fn build_rips_bounded(cloud: &PointCloud, r: f64, max_dim: usize, max_simplices: usize) -> Result<SimplicialComplex> {
    if cloud.is_empty() {
        return Err(invalid("cannot build a Rips complex on an empty cloud"));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid(format!("Rips threshold must be positive, got {r}")));
    }
    if !(1..=2).contains(&max_dim) {
        return Err(invalid(format!("max_dim must be 1 or 2, got {max_dim}")));
    }
    let n = cloud.len();
    let r2 = r * r;

    // Upper neighbour lists: neighbours[i] holds j > i with |x_i - x_j| <= r.
    let mut neighbours: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, list) in neighbours.iter_mut().enumerate() {
        let p = cloud.point(i);
        for j in i + 1..n {
            if crate::cloud::squared_distance(p, cloud.point(j)) <= r2 {
                list.push(j as u32);
            }
        }
    }

    let too_large = || Error::ComplexTooLarge { threshold: r, limit: max_simplices };
    let edge_count: usize = neighbours.iter().map(Vec::len).sum();
    let mut budget = max_simplices.checked_sub(n + edge_count).ok_or_else(too_large)?;

    let mut edges = Vec::with_capacity(edge_count);
    for (i, list) in neighbours.iter().enumerate() {
        edges.extend(list.iter().map(|&j| [i as u32, j]));
    }

    let mut triangles = Vec::new();
    if max_dim == 2 {
        for (i, ni) in neighbours.iter().enumerate() {
            for (pos, &j) in ni.iter().enumerate() {
                let nj = &neighbours[j as usize];
                // both lists are sorted; every common k exceeds j
                let (mut a, mut b) = (pos + 1, 0);
                while a < ni.len() && b < nj.len() {
                    match ni[a].cmp(&nj[b]) {
                        core::cmp::Ordering::Less => a += 1,
                        core::cmp::Ordering::Greater => b += 1,
                        core::cmp::Ordering::Equal => {
                            budget = budget.checked_sub(1).ok_or_else(too_large)?;
                            triangles.push([i as u32, j, ni[a]]);
                            a += 1;
                            b += 1;
                        }
                    }
                }
            }
        }
    }

    Ok(SimplicialComplex::from_sorted(n, edges, triangles, Some(r)))
}

/// `∂_k` with rows indexed by `(k-1)`-simplices and columns by `k`-simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub matrix: SparseMatrix,
}

/// `[∂_1, ∂_2]` with `∂[v_0..v_k] = Σ (-1)^i [v_0..v̂_i..v_k]`.
///
/// `∂_2` is present (possibly with no columns) even for a 1-dimensional
/// complex.
pub fn boundary_matrices(complex: &SimplicialComplex, field: PrimeField) -> Vec<BoundaryMatrix> {
    let minus = field.sign(1);
    let d1 = complex
        .edges
        .iter()
        .map(|&[a, b]| SparseColumn::from_sorted(vec![(a, minus), (b, 1)]))
        .collect();
    let d2 = complex
        .triangles
        .iter()
        .map(|&[a, b, c]| {
            let bc = complex.edge_index(b, c).expect("face-closed") as u32;
            let ac = complex.edge_index(a, c).expect("face-closed") as u32;
            let ab = complex.edge_index(a, b).expect("face-closed") as u32;
            // lexicographic order gives ab < ac < bc
            SparseColumn::from_sorted(vec![(ab, 1), (ac, minus), (bc, 1)])
        })
        .collect();
    vec![
        BoundaryMatrix { k: 1, matrix: SparseMatrix::new(field, complex.vertex_count, d1) },
        BoundaryMatrix { k: 2, matrix: SparseMatrix::new(field, complex.edges.len(), d2) },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lu::rank;

    const F3: PrimeField = PrimeField::F3;

    #[test]
    fn simplex_budget() {
        let c = PointCloud::from_points(&[[0.0], [0.1], [0.2]]).unwrap();
        assert_eq!(build_rips_bounded(&c, 1.0, 2, 7).unwrap().count(2), 1);
        assert!(matches!(build_rips_bounded(&c, 1.0, 2, 6), Err(Error::ComplexTooLarge { limit: 6, .. })));
        assert!(build_rips_bounded(&c, 1.0, 1, 5).is_err());
        assert_eq!(build_rips_bounded(&c, 1.0, 1, 6).unwrap().count(1), 3);
    }

    #[test]
    fn two_far_points() {
        let c = PointCloud::from_points(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let k = build_rips(&c, 0.5, 2).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (2, 0, 0));
    }

    #[test]
    fn close_triple_fills() {
        let c = PointCloud::from_points(&[[0.0, 0.0], [0.1, 0.0], [0.0, 0.1]]).unwrap();
        let k = build_rips(&c, 0.5, 2).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 3, 1));
        let k1 = build_rips(&c, 0.5, 1).unwrap();
        assert_eq!(k1.count(2), 0);
    }

    #[test]
    fn unit_square_has_no_diagonals() {
        let c = PointCloud::from_points(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let k = build_rips(&c, 1.2, 2).unwrap();
        assert_eq!(k.edges(), &[[0, 1], [0, 3], [1, 2], [2, 3]]);
        assert_eq!(k.count(2), 0);
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = PointCloud::from_points(&[[0.0]]).unwrap();
        assert!(build_rips(&c, 0.0, 2).is_err());
        assert!(build_rips(&c, 1.0, 3).is_err());
        let empty = PointCloud::new(2, alloc::vec![]).unwrap();
        assert!(build_rips(&empty, 1.0, 2).is_err());
    }

    #[test]
    fn single_edge_boundary_sign() {
        let k = SimplicialComplex::closure(2, &[[0u32, 1]]).unwrap();
        let d = boundary_matrices(&k, F3);
        assert_eq!(d[0].matrix.to_dense().column(0), alloc::vec![2, 1]);
    }

    #[test]
    fn filled_triangle_is_a_chain_complex() {
        let k = SimplicialComplex::closure(3, &[[0u32, 1, 2]]).unwrap();
        let d = boundary_matrices(&k, F3);
        assert!(d[0].matrix.mul(&d[1].matrix).is_zero());
    }

    #[test]
    fn square_cycle_boundary_rank() {
        let k = SimplicialComplex::closure(4, &[[0u32, 1], [1, 2], [2, 3], [0, 3]]).unwrap();
        let d = boundary_matrices(&k, F3);
        assert_eq!(rank(&d[0].matrix.to_dense()), 3);
    }

    #[test]
    fn simplex_index_round_trips() {
        let k = SimplicialComplex::closure(5, &[&[0u32, 1, 2][..], &[1, 3][..], &[2, 3, 4][..]]).unwrap();
        for dim in 0..=2 {
            for i in 0..k.count(dim) {
                assert_eq!(k.simplex_index(&k.simplex(dim, i)), Some(i));
            }
        }
        assert_eq!(k.simplex_index(&[0, 4]), None);
        assert_eq!(k.simplex_index(&[1, 0]), None);
        assert_eq!(k.simplex_index(&[0, 1, 3]), None);
    }

    #[test]
    fn closure_rejects_missing_faces() {
        assert!(SimplicialComplex::new(3, alloc::vec![[0, 1]], alloc::vec![[0, 1, 2]]).is_err());
    }
}
