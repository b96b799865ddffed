//! Exact algebra for toric P-difference varieties over `Z[x]`.
//!
//! The crate is layered bottom-up: [`ring`] provides `Z[x]` with its
//! lexicographic order, [`linalg`] the lattice algebra (ranks, kernels,
//! membership, complements), [`semimodule`] affine `P[x]`-semimodules and
//! their faces, [`ideal`] binomial ideals, [`fan`] compatible collections of
//! semimodules, and [`divisor`] the class and Picard modules.

pub mod divisor;
pub mod error;
pub mod fan;
pub mod ideal;
pub mod linalg;
pub mod ring;
pub mod semimodule;
pub mod verdict;

pub use error::{Error, Result};
pub use linalg::{Lattice, MembershipCertificate, ZxMatrix, ZxVector};
pub use ring::{compare, OrderSign, ZxPoly};
pub use verdict::{Obstruction, SearchBounds, Verdict};
