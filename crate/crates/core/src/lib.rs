//! Exact construction and verification of multiply affinized B_r
//! intersection-matrix algebras realized as orthogonal Lie algebras
//! `so_{2r+1}` over a presented noncommutative coordinate ring.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coordalg;
pub mod error;
pub mod homsuite;
pub mod liealg;
pub mod rootsys;
pub mod sample;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
