//! Core algorithms for estimating the homology of a point cloud from random
//! sub-samples.
//!
//! Everything here is exact: matrices live over a prime field `F_p` (default
//! `F_3`) and no floating point enters the linear algebra. The pipeline is
//!
//! 1. build a Vietoris-Rips complex ([`rips`]) for the full cloud and for each
//!    sub-sample,
//! 2. reduce the boundary matrices into a homology-revealing basis
//!    ([`homology`]),
//! 3. push the sub-sample's homology generators through the inclusion chain
//!    map and read off the induced map on homology ([`induced`]),
//! 4. weight the induced maps and assemble a basis greedily over the linear
//!    matroid of their columns ([`greedy`]),
//! 5. optionally look for figure-8 / annulus constructions among the basis
//!    vectors ([`construction`]).
//!
//! The crate is `no_std` and only needs `alloc`. IO, random generation and
//! the command line live in the `subhom` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cloud;
pub mod construction;
pub mod error;
pub mod field;
pub mod greedy;
pub mod homology;
pub mod induced;
pub mod lu;
pub mod matrix;
pub mod persistence;
pub mod rips;
pub mod sparse;

pub use cloud::{GeneratorMeta, PointCloud};
pub use construction::{
    check_annulus, check_figure8, ConstructionKind, ConstructionReport, Witness, DEFAULT_MAX_SUBSET,
};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use greedy::{
    estimate_from_basis, form_weights, DedupAxis, greedy_basis, rank_statistics, HomologyBasisEstimate,
    RankStatistics, WeightOptions, WeightedMapSet,
};
pub use homology::{reduce, reduce_full, BettiVector, ChainComplex, ReducedChainComplex};
pub use induced::{inclusion_chain_map, induced_on_homology, Codomain, InducedMap};
pub use lu::{lu_full_pivot, rank, solve_in_span, LuFactorization};
pub use matrix::FieldMatrix;
pub use persistence::{persistence_baseline, PersistencePair};
pub use rips::{boundary_matrices, build_rips, build_rips_bounded, BoundaryMatrix, SimplicialComplex};
pub use sparse::{SparseColumn, SparseMatrix};
