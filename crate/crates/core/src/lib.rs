//! Bandit policies, small two-player games, a Monte-Carlo tree search engine,
//! and the seeded experiment harnesses that drive them.
//!
//! The crate is `no_std` (with `alloc`): all randomness enters through
//! caller-supplied seeds and all time through the [`clock::Clock`] trait, so
//! every run is bit-reproducible. IO, file formats, and the command-line
//! front end live in the companion `rootbandit` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bandit;
pub mod clock;
pub mod error;
pub mod games;
pub mod mcts;
pub mod seeds;
pub mod synth;
pub mod tournament;

pub use error::Error;

/// Convenient alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
