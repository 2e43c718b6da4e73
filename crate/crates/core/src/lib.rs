//! Exact computation of product-one invariants of small finite groups.
//!
//! The crate is `no_std` (it needs `alloc`). File access, parallel drivers and
//! the command line live in the `davenport` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bits;
pub mod bounds;
pub mod error;
pub mod factorizer;
pub mod group;
pub mod lattice;
pub mod search;
pub mod seq;
pub mod sumset;
pub mod witness;

pub use bits::{ElementSet, MAX_ORDER};
pub use error::{GroupError, SeqError};
pub use group::{Elem, FiniteGroup, GroupSpec, QuotientMap, Subgroup};
pub use lattice::{Lattice, DEFAULT_DP_BUDGET};
pub use seq::{OrderedSequence, Sequence};
