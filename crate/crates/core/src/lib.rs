//! Simulator for a three-player entangled quantum game whose qubit source is
//! corrupted by noise.
//!
//! The crate evaluates the classical probabilistic-flip game and the quantum
//! circuit game exactly, groups the 27 strategy profiles of each game into
//! ten permutation classes, checks Nash equilibria, and models the noisy
//! source: payoff lines in the noise level `x`, their crossings, and the
//! matching two-level temperatures.

pub mod classes;
pub mod cli;
pub mod demon;
pub mod error;
pub mod format;
pub mod game;
pub mod golden;
pub mod statevec;
pub mod verify;

pub use error::Error;
