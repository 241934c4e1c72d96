//! Benchmark shapes, sub-sampling and metric helpers.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, which is portable
//! across platforms, so a seed pins the output bit for bit.

use std::f64::consts::TAU;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use subhom_core::{GeneratorMeta, PointCloud};

use crate::error::{Error, Result};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn noise_distribution(noise: f64) -> Result<Normal<f64>> {
    if !(noise.is_finite() && noise >= 0.0) {
        return Err(Error::invalid(format!("noise must be a nonnegative number, got {noise}")));
    }
    Normal::new(0.0, noise).map_err(|e| Error::invalid(e.to_string()))
}

/// `n` points spread by arc length over two unit circles centred at `(0, 1)`
/// and `(0, -1)`, then jittered by isotropic Gaussian noise.
pub fn generate_figure8(n: usize, noise: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::invalid("figure-8 needs at least one point"));
    }
    let jitter = noise_distribution(noise)?;
    let mut rng = rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    for _ in 0..n {
        let cy = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let t: f64 = rng.random_range(0.0..TAU);
        coords.push(t.cos() + jitter.sample(&mut rng));
        coords.push(cy + t.sin() + jitter.sample(&mut rng));
    }
    Ok(PointCloud::new(2, coords)?.with_meta(GeneratorMeta { shape: "figure8".into(), noise, seed }))
}

/// `n` points uniform by area in `r_inner <= |p| <= r_outer`, then jittered.
pub fn generate_annulus(n: usize, r_inner: f64, r_outer: f64, noise: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::invalid("annulus needs at least one point"));
    }
    if !(r_inner > 0.0 && r_inner < r_outer && r_outer.is_finite()) {
        return Err(Error::invalid(format!(
            "annulus radii must satisfy 0 < inner < outer, got {r_inner} and {r_outer}"
        )));
    }
    let jitter = noise_distribution(noise)?;
    let mut rng = rng(seed);
    let (a, b) = (r_inner * r_inner, r_outer * r_outer);
    let mut coords = Vec::with_capacity(2 * n);
    for _ in 0..n {
        let r = (a + rng.random::<f64>() * (b - a)).sqrt();
        let t: f64 = rng.random_range(0.0..TAU);
        coords.push(r * t.cos() + jitter.sample(&mut rng));
        coords.push(r * t.sin() + jitter.sample(&mut rng));
    }
    Ok(PointCloud::new(2, coords)?.with_meta(GeneratorMeta { shape: "annulus".into(), noise, seed }))
}

/// A sub-sample of `n` distinct points.
#[derive(Debug, Clone)]
pub struct Subsample {
    /// Positions in the parent cloud, ascending.
    pub indices: Vec<usize>,
    pub cloud: PointCloud,
}

/// Draws `n` points without replacement. Indices come back sorted, so vertex
/// order in the sub-sample agrees with the parent.
pub fn subsample(cloud: &PointCloud, n: usize, seed: u64) -> Result<Subsample> {
    if n == 0 || n > cloud.len() {
        return Err(Error::invalid(format!(
            "sub-sample size {n} must lie in 1..={}",
            cloud.len()
        )));
    }
    let mut indices = index::sample(&mut rng(seed), cloud.len(), n).into_vec();
    indices.sort_unstable();
    let cloud = cloud.select(&indices);
    Ok(Subsample { indices, cloud })
}

fn directed_hausdorff_sq(a: &PointCloud, b: &PointCloud) -> f64 {
    a.points()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| {
            b.points()
                .map(|q| subhom_core::cloud::squared_distance(p, q))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance under the Euclidean metric.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("Hausdorff distance needs two nonempty clouds"));
    }
    if a.dim() != b.dim() {
        return Err(Error::invalid(format!(
            "clouds have dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(directed_hausdorff_sq(a, b).max(directed_hausdorff_sq(b, a)).sqrt())
}

/// How the Rips threshold of a sub-sample is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRule {
    /// `base + 2 · d_H(sample, full)`.
    Hausdorff { base: f64 },
    Fixed(f64),
}

impl Default for ThresholdRule {
    fn default() -> Self {
        ThresholdRule::Hausdorff { base: 0.25 }
    }
}

impl ThresholdRule {
    pub fn threshold(&self, full: &PointCloud, sample: &PointCloud) -> Result<f64> {
        match *self {
            ThresholdRule::Hausdorff { base } => rips_threshold(full, sample, base),
            ThresholdRule::Fixed(r) if r > 0.0 && r.is_finite() => Ok(r),
            ThresholdRule::Fixed(r) => Err(Error::invalid(format!("fixed threshold must be positive, got {r}"))),
        }
    }
}

/// `base + 2 · d_H(sample, full)`.
pub fn rips_threshold(full: &PointCloud, sample: &PointCloud, base: f64) -> Result<f64> {
    if !(base >= 0.0 && base.is_finite()) {
        return Err(Error::invalid(format!("threshold base must be nonnegative, got {base}")));
    }
    Ok(base + 2.0 * hausdorff_distance(sample, full)?)
}

/// Sub-sample sizes, replicates per size, and the master seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSchedule {
    pub sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
}

impl SampleSchedule {
    pub fn new(sizes: Vec<usize>, replicates: usize, seed: u64) -> Self {
        Self { sizes, replicates, seed }
    }

    pub fn validate(&self, cloud_len: usize) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::invalid("at least one sub-sample size is required"));
        }
        if self.replicates == 0 {
            return Err(Error::invalid("at least one replicate is required"));
        }
        if let Some(&bad) = self.sizes.iter().find(|&&s| s == 0 || s > cloud_len) {
            return Err(Error::invalid(format!(
                "sub-sample size {bad} must lie in 1..={cloud_len}"
            )));
        }
        Ok(())
    }

    /// Seed of replicate `rep` at sub-sample size `size`.
    pub fn replicate_seed(&self, size: usize, rep: usize) -> u64 {
        splitmix64(splitmix64(self.seed ^ splitmix64(size as u64)) ^ rep as u64)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_figure8_lies_on_circles() {
        let c = generate_figure8(4, 0.0, 9).unwrap();
        for p in c.points() {
            let d = ((p[0]).hypot(p[1] - 1.0) - 1.0).abs().min(((p[0]).hypot(p[1] + 1.0) - 1.0).abs());
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(generate_figure8(1000, 0.1, 42).unwrap(), generate_figure8(1000, 0.1, 42).unwrap());
        assert_eq!(
            generate_annulus(100, 0.5, 1.0, 0.0, 7).unwrap(),
            generate_annulus(100, 0.5, 1.0, 0.0, 7).unwrap()
        );
        assert_ne!(generate_figure8(10, 0.1, 1).unwrap(), generate_figure8(10, 0.1, 2).unwrap());
    }

    #[test]
    fn noiseless_annulus_radii() {
        let c = generate_annulus(100, 0.5, 1.0, 0.0, 7).unwrap();
        for p in c.points() {
            let r = p[0].hypot(p[1]);
            assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&r));
        }
    }

    #[test]
    fn invalid_generator_arguments() {
        assert!(generate_figure8(0, 0.1, 0).is_err());
        assert!(generate_figure8(5, -1.0, 0).is_err());
        assert!(generate_annulus(5, 1.0, 0.5, 0.0, 0).is_err());
        assert!(generate_annulus(5, 0.0, 0.5, 0.0, 0).is_err());
    }

    #[test]
    fn subsample_properties() {
        let c = generate_figure8(10, 0.1, 0).unwrap();
        let s = subsample(&c, 10, 5).unwrap();
        assert_eq!(s.indices, (0..10).collect::<Vec<_>>());
        let big = generate_figure8(1000, 0.1, 0).unwrap();
        let a = subsample(&big, 20, 3).unwrap();
        let b = subsample(&big, 20, 3).unwrap();
        assert_eq!(a.indices, b.indices);
        let s = subsample(&big, 300, 3).unwrap();
        for (k, &i) in s.indices.iter().enumerate() {
            assert_eq!(s.cloud.point(k), big.point(i));
        }
        assert!(subsample(&big, 1001, 0).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let a = PointCloud::from_points(&[[0.0]]).unwrap();
        let b = PointCloud::from_points(&[[3.0]]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 3.0);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let two = PointCloud::from_points(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let one = PointCloud::from_points(&[[0.0, 0.0]]).unwrap();
        assert_eq!(hausdorff_distance(&two, &one).unwrap(), 1.0);
        assert!(hausdorff_distance(&a, &two).is_err());
    }

    #[test]
    fn threshold_rule() {
        let c = generate_figure8(50, 0.1, 0).unwrap();
        assert_eq!(rips_threshold(&c, &c, 0.25).unwrap(), 0.25);
        assert_eq!(ThresholdRule::Fixed(2.0).threshold(&c, &c).unwrap(), 2.0);
        assert!(ThresholdRule::Fixed(0.0).threshold(&c, &c).is_err());
    }

    #[test]
    fn schedule_validation_and_seeds() {
        let s = SampleSchedule::new(vec![20, 50], 10, 0);
        assert!(s.validate(100).is_ok());
        assert!(s.validate(30).is_err());
        assert!(SampleSchedule::new(vec![], 1, 0).validate(10).is_err());
        assert!(SampleSchedule::new(vec![5], 0, 0).validate(10).is_err());
        assert_ne!(s.replicate_seed(20, 0), s.replicate_seed(20, 1));
        assert_ne!(s.replicate_seed(20, 0), s.replicate_seed(50, 0));
    }
}
