//! Exact arithmetic for root data with finite group actions.
//!
//! The crate covers restriction of a root datum along a group of diagram
//! automorphisms (folding), the star action and its Weyl-valued cocycle, and
//! nonabelian first cohomology of finite Galois quotients with values in the
//! fixed Weyl group, together with the twisting construction it classifies.

pub mod action;
pub mod cli;
pub mod error;
pub mod folding;
pub mod lattice;
pub mod mat;
pub mod rootdatum;
pub mod twist;

pub use error::{Error, Result};
