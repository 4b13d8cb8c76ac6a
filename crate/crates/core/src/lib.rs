//! Unbent collections of orthogonal drawings for plane graphs of maximum
//! degree four: every edge is drawn without bends in at least one drawing of
//! the collection.

pub mod approx;
pub mod collections;
pub mod cubic;
pub mod error;
pub mod flow;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod ortho;

pub use error::{Error, Result};
pub use graph::{EdgeColoring2, Face, PlaneGraph, Side};
