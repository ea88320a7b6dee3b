//! Free-group words of slice curves around pairs of lines.

pub mod config;
pub mod search;
pub mod word;

pub use config::*;
pub use search::*;
pub use word::*;
