//! Generalized packing designs.
//!
//! An ordinary packing design picks k-subsets of a point set so that no
//! pair (more generally, no t-subset) occurs in more than lambda blocks.
//! The generalized version splits the point set into m parts of sizes
//! v = (v_1, ..., v_m) and asks each block to take a k_i-subset from part
//! i; the packing condition then applies to every admissible way of
//! distributing the strength t across parts. Many classical objects are
//! the special cases: proper edge colourings, Howell designs and Room
//! squares, Kirkman-style resolutions, mutually orthogonal Latin squares
//! and rectangles, and packing arrays.
//!
//! The crate is organised around that correspondence:
//!
//! - [`model`] — instances, blocks, packings, verification, text format
//! - [`bounds`] — upper bounds and exact packing numbers, with provenance
//! - [`search`] — exhaustive branch-and-bound maximisation and decision
//! - [`blocks`] — classical ingredients: factorizations, triple systems,
//!   Latin rectangles, Howell designs, colour-classed triple packings
//! - [`construct`] — maximum or best-known constructions for t=2 and
//!   every block profile summing to 3 or 4, plus generic transforms
//! - [`views`] — graph, array, colour-class, and packing-array forms
//! - [`catalogue`] — embedded, self-verifying reference designs
//!
//! The verifier and the bounds accept any t and lambda; the constructions
//! target t=2, lambda=1, the setting where exact numbers are known.

pub mod blocks;
pub mod bounds;
pub mod catalogue;
pub mod construct;
pub mod model;
pub mod search;
pub mod views;

pub use bounds::{BoundKind, BoundReport};
pub use construct::{ConstructionResult, Optimality};
pub use model::{Block, GeneralizedPacking, PackingInstance, VerificationReport};
pub use search::{Decision, SearchConfig, SearchResult, SearchStatus};
