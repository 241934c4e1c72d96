use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// How a synthetic cloud was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMeta {
    pub shape: String,
    pub noise: f64,
    pub seed: u64,
}

/// A finite set of points in `R^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    meta: Option<GeneratorMeta>,
}

impl PointCloud {
    /// `coords` holds `dim` values per point, back to back.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("point dimension must be positive"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(invalid(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coordinates must be finite"));
        }
        Ok(Self { dim, coords, meta: None })
    }

    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.as_ref().len());
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(invalid(format!("point {i} has {} coordinates, expected {dim}", p.len())));
            }
            coords.extend_from_slice(p);
        }
        Self::new(dim, coords)
    }

    pub fn with_meta(mut self, meta: GeneratorMeta) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn meta(&self) -> Option<&GeneratorMeta> {
        self.meta.as_ref()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn squared_distance(&self, i: usize, j: usize) -> f64 {
        squared_distance(self.point(i), self.point(j))
    }

    /// The points at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self { dim: self.dim, coords, meta: None }
    }
}

#[inline]
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_points() {
        assert!(PointCloud::from_points(&[&[0.0, 1.0][..], &[2.0][..]]).is_err());
        assert!(PointCloud::new(0, alloc::vec![]).is_err());
        assert!(PointCloud::new(2, alloc::vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn select_preserves_order() {
        let c = PointCloud::from_points(&[[0.0], [1.0], [2.0]]).unwrap();
        let s = c.select(&[2, 0]);
        assert_eq!(s.point(0), &[2.0]);
        assert_eq!(s.point(1), &[0.0]);
    }
}
