pub mod element_set;
pub mod error;
pub mod matroid;
pub mod exchange;
pub mod catalog;
pub mod laws;
pub mod report;
pub mod sweep;
pub mod cli;

pub use element_set::ElementSet;
pub use error::{Error, Result};
pub use matroid::{build_matroid, Matroid, MatroidSpec};
