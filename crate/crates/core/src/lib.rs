pub mod complex;
pub mod constructions;
pub mod error;
pub mod group;
pub mod homology;
pub mod poset;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
