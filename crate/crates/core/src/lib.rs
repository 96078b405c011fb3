pub mod coloring;
pub mod error;
pub mod favaron;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod matching;
pub mod saturation;
pub mod tuza;

pub use error::{Error, Result};
pub use graph::{BipartiteSplit, Graph, Orientation, VertexSet};
