//! Rank-2 bundles on the projective line over F_q, Eichler orders, and
//! classifying graphs of their conjugacy classes.

pub mod bttree;
pub mod cgraph;
pub mod error;
pub mod funcfield;
pub mod lattices;
pub mod linalg;
pub mod orders;

pub use error::{Error, Result};
pub use funcfield::{Divisor, Fq, Place, Poly, RatFn};
pub use lattices::{Lattice2, SplitType};
