pub mod error;
pub mod num;
pub mod constant;
pub mod poly;
pub mod lattice;
pub mod chart;
pub mod expr;
pub mod numeric;
pub mod parse;
pub mod linalg;
pub mod exterior;
pub mod distgeo;
pub mod liealg;
pub mod catalog;
pub mod checks;
pub mod catfile;
pub mod gen;

pub use error::{Error, Result};
