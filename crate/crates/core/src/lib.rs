//! Exact harmonic analysis on finite balls of homogeneous trees.

pub mod error;
pub mod function;
pub mod io;
pub mod operators;
pub mod poly;
pub mod pompeiu;
pub mod quadext;
pub mod random;
pub mod reconstruction;
pub mod tree;
pub mod verify;
pub mod wave;

pub use error::{Error, Result};
pub use function::TreeFunction;
pub use tree::{TreeBall, Vertex};
