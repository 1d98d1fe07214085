//! LDPC code construction, systematic encoding and parity-check I/O.

pub mod degree;
pub mod gf2;
pub mod graph;
pub mod peg;
pub mod systematic;

pub use degree::{derive_check_distribution, lambda_a, lambda_b, DegreeDistribution};
pub use graph::TannerGraph;
pub use peg::peg_construct;
pub use systematic::{code_rate, SystematicCode};
