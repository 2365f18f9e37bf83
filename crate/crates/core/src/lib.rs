//! Constructive colourings of cubic graph orientations.
//!
//! Every orientation of a connected cubic graph admits an oriented
//! 8-colouring, and every orientation of a cubic graph admits a 2-dipath
//! 7-colouring. This crate builds both colourings constructively (module
//! [`eight`] and module [`dipath`]), backed by Paley-tournament machinery
//! ([`paley`]), an exact homomorphism search ([`hom`]), brute-force
//! chromatic oracles ([`oracle`]) and a census harness ([`census`]) that
//! re-verifies everything with independent validators.

pub mod census;
pub mod codec;
pub mod dipath;
pub mod eight;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hom;
pub mod oracle;
pub mod paley;

pub use error::{Error, Result};
pub use graph::{OrientedGraph, SimpleGraph, VertexColouring};
