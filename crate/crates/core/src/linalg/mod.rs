//! Exact integer linear algebra: sparse matrices, Smith normal form, homology
//! with representatives, and prime-field solves.

pub mod coef;
pub mod homology;
pub mod modp;
pub mod snf;
pub mod sparse;

pub use homology::{
    check_chain_map, homology, homology_in_degree, homology_ranks, induced_in_group, induced_on_homology,
    reindex_poincare_lefschetz, ChainComplex, GroupRanks, HomologyGroup, HomologySummary, InducedMap,
};
pub use snf::{elementary_divisors, rank, smith_normal_form, SnfResult};
pub use sparse::SparseIntMatrix;
