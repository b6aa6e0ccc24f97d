//! Stratifold graphs and their fundamental-group decision procedures.
//!
//! A closed 2-stratifold — surfaces glued along circles where at least three
//! sheets meet — is encoded by a bicoloured labelled graph: white vertices
//! carry surface genus, black vertices are singular circles, edge labels are
//! attaching degrees, and edge signs carry the gluing orientation class.
//! This crate provides:
//!
//! - [`graph`]: the validated graph type with structural queries;
//! - [`presentation`]: fundamental-group presentations and the abelianized
//!   relation matrix;
//! - [`homology`]: exact Smith normal form, elementary ideals, and first
//!   homology;
//! - [`reduction`]: group-preserving rewriting (pruning, splitting, core
//!   reduction);
//! - [`classify`]: recognizers (L(p,q), A-graphs, echinus graphs) and the
//!   decision procedures for 1-connectedness and infinite cyclic
//!   fundamental group;
//! - [`group`]: bounded Tietze simplification and coset enumeration backing
//!   the search oracle;
//! - [`io`]: the text format and DOT export;
//! - [`enumerate`]: exhaustive small-graph censuses for testing and
//!   exploration.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `stratifold` binary for the command-line interface.

pub mod classify;
pub mod enumerate;
pub mod graph;
pub mod group;
pub mod homology;
pub mod io;
pub mod presentation;
pub mod reduction;

pub use classify::{decide_pi1_z, simply_connected, Answer, Verdict};
pub use graph::{GraphBuilder, LabelledGraph, Sign};
pub use homology::{h1, smith_normal_form, AbelianGroup, IntMatrix};
pub use reduction::{core_reduce, normalize_signs, prune};
