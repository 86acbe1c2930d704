//! Spectral Nordhaus–Gaddum toolkit.
//!
//! Laplacian (`L = D - A`) and signless Laplacian (`Q = D + A`) spectra of
//! simple graphs, exact characteristic polynomials, equitable-partition
//! quotients, and one checkable predicate per bound on `μ₁`, `μ_{n-1}` and
//! `q₁` of a graph and its complement. The [`harness`] module drives
//! exhaustive and corpus scans, the `H_n` ratio study and a local search.

pub mod bipartite;
pub mod bounds;
pub mod cubic;
pub mod degree;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod partition;
pub mod poly;
pub mod spectra;

pub use bipartite::{bipartition, BipStructure};
pub use degree::{degree_stats, DegreeStats};
pub use enumerate::{enumerate_labelled, LabelledGraphs};
pub use error::{Error, Result};
pub use family::{construct, FamilySpec};
pub use graph::Graph;
pub use graph6::{parse_graph6, write_graph6};
pub use spectra::{build_matrix, eig_symmetric, key_values, spectrum, KeyValues, MatrixKind, Spectrum};
