//! Integral (co)homology of ordered configuration spaces of a genus-g surface
//! with one boundary component, computed from a cell stratification, together
//! with the mapping class group action on it.

pub mod acceptance;
pub mod action;
pub mod cli;
pub mod complex;
pub mod error;
pub mod free_group;
pub mod linalg;
pub mod model;
pub mod perm;
pub mod simplicial;

pub use error::{Error, Result};
