//! Resonance graphs of graphs embedded in closed surfaces.
//!
//! The pipeline is: build an [`embedded::EmbeddedGraph`] from a rotation
//! system, trace its faces, pick an even-face set, enumerate perfect
//! matchings, build the [`resonance::ResonanceGraph`], then run the checks
//! in [`cube`], [`metric`] and [`polynomial`]. [`report`] bundles all of it
//! into one JSON document.

pub mod corpus;
pub mod cube;
pub mod emb;
pub mod embedded;
pub mod matching;
pub mod metric;
pub mod polynomial;
pub mod report;
pub mod resonance;

pub use embedded::{EmbeddedGraph, EvenFaceSet, Face, FaceId, Sign};
pub use matching::Matching;
pub use polynomial::IntegerPolynomial;
pub use resonance::{build_resonance_graph, Component, ResonanceGraph};
