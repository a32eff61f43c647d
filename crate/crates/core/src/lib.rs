//! Exact path counting on the Catalan, Schroeder and Catalan-Schroeder lattices.
//!
//! [`series`] provides truncated power series over big integers, [`kernel`]
//! builds the generating functions and point-count formulas, [`oracle`] counts
//! the same paths by brute-force dynamic programming, [`catalog`] binds the
//! OEIS sequences A026769-A026790 to their generating functions, and [`oeis`]
//! fetches and diffs OEIS b-files.

pub mod catalog;
pub mod cli;
pub mod kernel;
pub mod oeis;
pub mod oracle;
pub mod series;
pub mod verify;

pub use catalog::{SequenceDescriptor, SequenceId, SequenceKind};
pub use kernel::{Family, KernelSet, LatticeVariant};
pub use oracle::{GridCounts, LatticeRule};
pub use series::TruncatedSeries;
