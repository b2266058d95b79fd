//! Constructive machinery for oriented Hamilton path and cycle transversals
//! in collections of tournaments.
//!
//! A *collection* is a family of tournaments on a shared vertex set, indexed
//! by colors. A *transversal* (rainbow) copy of an oriented path or cycle
//! picks each arc from a distinct color's tournament. This crate provides:
//!
//! - bit-packed tournaments, collections, majority digraphs ([`tournament`]);
//! - orientation patterns, block structure, oscillation classification and
//!   directed-oscillating decompositions ([`pattern`]);
//! - rainbow embeddings and their validator ([`embedding`]);
//! - median orders (exact subset-DP and relocation local search) and the
//!   small constructive propositions they support ([`order`]);
//! - robust and good H-partitions ([`hpartition`]);
//! - brooms and near-rainbow broom constructors ([`broom`]);
//! - exact transversal search with matching-based pruning, an independent
//!   brute-force oracle, orientation sweeps ([`solver`], [`oracle`]);
//! - vertex absorption into H-partition backbones ([`absorb`]);
//! - deterministic seeded instance generation ([`generate`]).
//!
//! The crate is `no_std` + `alloc`; IO, file formats and the CLI live in the
//! companion `transversal-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod absorb;
pub mod broom;
pub mod embedding;
mod error;
pub mod generate;
pub mod hpartition;
pub mod oracle;
pub mod order;
pub mod pattern;
mod ratio;
pub mod solver;
pub mod tournament;

pub use error::Error;
pub use ratio::Ratio;

pub type Result<T> = core::result::Result<T, Error>;
