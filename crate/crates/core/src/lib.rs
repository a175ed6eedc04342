pub mod chain;
pub mod correlator;
pub mod error;
pub mod frobenius;
pub mod graph;
pub mod harness;
pub mod hochschild;
pub mod linalg;
pub mod operad;
pub mod planar;
pub mod rational;
pub mod tree;

pub use error::{CactiError, Result};
pub use frobenius::FrobeniusAlgebra;
pub use graph::RibbonGraph;
pub use harness::{run_suite, SuiteConfig, SuiteReport};
pub use hochschild::{Cochain, Cohomology};
pub use rational::Q;
pub use tree::{enumerate_cells, enumerate_spineless, DecoratedTree};
