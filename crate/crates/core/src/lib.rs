//! Quasisymmetric functions in the monomial, fundamental and `N` bases,
//! labeled posets and their P-partition functions, and matroid invariants
//! with the rank-two theory built on them.

pub mod comb;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod poset;
pub mod qsym;
pub mod verify;

pub use comb::{Composition, OrderedPartition, Partition, Permutation, SetPartition};
pub use error::{Error, Result};
pub use poset::LabeledPoset;
pub use qsym::{Basis, QSymElement, TransitionMatrix};
