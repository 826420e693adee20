//! Finite universal algebras, their representations, and the constructions
//! built on top of them: closures and quasibases, polymorphisms, tensor
//! products of abelian groups, and diagrams of representations.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod representation;
pub mod search;
pub mod smith;
pub mod structures;
pub mod tensor;
pub mod words;
pub mod zoo;

pub use algebra::{ElementMap, ElementSet, EquivalenceRelation, FiniteAlgebra, OperatorDomain};
pub use error::{Error, Result};
pub use representation::{EndCombiner, Representation, Side};
pub use words::OmegaWord;

/// Smith forms over the three integer types the elimination is used with.
pub type SmithForm64 = smith::SmithForm<i64>;
pub type SmithForm128 = smith::SmithForm<i128>;
pub type SmithFormBig = smith::SmithForm<num_bigint::BigInt>;
