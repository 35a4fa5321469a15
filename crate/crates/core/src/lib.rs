//! Exact ultrametric Mahler measure `M∞` for nonzero rational and quadratic
//! algebraic numbers, with the supporting Mahler measure, modified Mahler
//! measure, B-set enumeration and multiplicative-relation machinery.

pub mod arith;
pub mod bset;
pub mod cli;
pub mod error;
pub mod group;
pub mod lattice;
pub mod mahler;
pub mod minf;
pub mod quad;

pub use arith::{Int, Rat};
pub use error::{Error, Result};
pub use mahler::{mahler_poly, mahler_surd, mbar, weil_height, MBarResult, MahlerValue};
pub use minf::{minf, minf_rational, MinfResult};
pub use quad::{QuadPoly, QuadSurd, SquarefreeK};
