//! Universal edge labelings: constructions, verification, exact search,
//! random labelings with probabilistic guarantees, and the two-player
//! labeling game.
//!
//! An edge labeling by positive integers is *universal* when, under every
//! orientation of the graph, adjacent vertices receive distinct sums of
//! incoming labels. This crate provides:
//!
//! - [`graph`]: graph types, generators, and the text formats;
//! - [`verify`]: universality checkers (orientation enumeration and a
//!   per-edge subset-sum criterion) with replayable counterexamples;
//! - [`coloring`]: proper edge colorings (trees, a fan-rotation
//!   `Δ+1` algorithm, and an exact branch-and-bound classifier);
//! - [`construct`]: bounds, closed-form labelings for stars, trees, and
//!   cubic/quartic graphs, and exact minimization of the largest label;
//! - [`random`]: randomized labelings for dense and general graphs plus a
//!   Monte Carlo conflict estimator;
//! - [`game`]: the alternating labeling game, scripted strategies, and an
//!   exact game solver.

pub mod coloring;
pub mod construct;
pub mod game;
pub mod graph;
pub mod random;
pub mod verify;

pub use coloring::{ChromaticIndex, ColoringError, EdgeColoring};
pub use construct::{BoundReport, ConstructError, RegularLabeling, SearchResult};
pub use game::{FpStrategy, GameOutcome, GameState, Player, SpStrategy};
pub use graph::{EdgeLabeling, Graph, GraphError, Orientation};
pub use random::{AeulLabeling, ConflictEstimate, RandomError};
pub use verify::{VerificationReport, VerifyError, Witness};
