//! Exact-arithmetic library for subsum-polynomial families over integer
//! partitions: the `num* / den* / G -> num / den` pipeline and its
//! binary, odd and ternary analogues, power sums of subsum polynomials,
//! and a catalog of verification checks with brute-force oracles and
//! closed-form fast paths.

pub mod arith;
pub mod binary;
pub mod cyclo;
pub mod partitions;
pub mod poly;
pub mod power;
pub mod subsum;
pub mod verify;

pub use arith::ArithError;
pub use cyclo::{BinomialProduct, CycloFactored, FactoredError};
pub use partitions::{PartFamily, Partition, PartitionError};
pub use poly::{CycloResidue, DensePoly, PolyError, ShapeReport};
