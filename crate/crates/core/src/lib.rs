//! Solvers, exact oracles and reductions for the solidarity cover problem:
//! partitioning a finite metric space into `m` pairwise-disjoint subsets
//! that each cover every point within a radius `r`.
//!
//! * [`metric`] holds the three instance encodings and distance primitives.
//! * [`verify`] is the checker every solver result goes through.
//! * [`greedy`] is the farthest-point 3-approximation of the radius.
//! * [`squares`] is the planar grid bicriteria scheme.
//! * [`exact`] contains the brute-force oracles.
//! * [`reductions`] bridges graphs, metrics and the 3-coloring gadget.
//! * [`io`] reads and writes documents, generates instances and renders SVG.

pub mod cli;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod io;
pub mod metric;
pub mod reductions;
mod scan;
pub mod squares;
pub mod verify;

pub use error::{Error, Result};
pub use metric::{Graph, HopGraph, Instance, Point2D, Radius};
pub use scan::RadiusSearch;
pub use verify::Partition;
