//! Verification workbench for cubical small-cancellation theory.
//!
//! The crate certifies non-positive curvature and collapsibility of finite
//! cube complexes, computes hyperplanes, carriers and convex hulls, builds
//! fiber products of combinatorial maps, enumerates pieces of cubical
//! presentations and decides C(n), checks disc and spherical diagrams for
//! reducedness, and builds the rose presentations of two-dimensional Artin
//! groups.

pub mod artin;
pub mod builders;
pub mod complex;
pub mod diagrams;
pub mod error;
pub mod io;
pub mod maps;
pub mod presentation;

pub use error::{Error, Result};
