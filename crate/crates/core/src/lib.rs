//! Incidence colorings of graphs.
//!
//! An incidence of a graph G is a pair (v, e) of a vertex and an edge it
//! belongs to; two incidences conflict when they touch in any of the three
//! ways that force distinct colors in an incidence coloring. This crate
//! provides the graph and incidence model, exact solvers for the incidence
//! chromatic number and several variants, locally injective homomorphism
//! search, fast constructions for Cartesian products (hypercubes in
//! particular), and census tooling over graph6 corpora.

pub mod census;
pub mod constructions;
pub mod graph;
pub mod graph6;
pub mod hom;
pub mod incidence;
pub mod json;
pub mod solver;

pub use graph::{Family, Graph, GraphError, ProductGraph};
pub use incidence::{Incidence, IncidenceColoring, Verdict};
pub use solver::{SolveError, SolveResult};
