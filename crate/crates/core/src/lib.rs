pub mod corpus;
pub mod document;
pub mod error;
pub mod flock;
pub mod groups;
pub mod linalg;
pub mod matrix;
pub mod matroid;
pub mod report;
pub mod scalars;
pub mod valuated;

pub use error::{Error, Result};
