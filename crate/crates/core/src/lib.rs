//! Finite geometry kernel: GF(q) tables, projective spaces, generalized
//! quadrangles, chamber and flag opposition graphs, explicit extremal
//! constructions with certificates, and exact independent-set and coloring
//! search.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod certificate;
pub mod constructions;
pub mod galois;
pub mod graph;
pub mod klein;
pub mod linalg;
pub mod projective;
pub mod quadrangle;
pub mod solvers;
