//! Point clouds, induced-map ensembles, baselines and file formats built on
//! `subhom-core`.

pub mod baselines;
pub mod ensemble;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod pointcloud;

pub use error::{Error, Result};
