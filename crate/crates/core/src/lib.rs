//! Certified small dominating sets for chorded Hamilton cycles (plane
//! triangulations with δ ≥ 4).
//!
//! Given a triangulation presented as a Hamilton cycle with inner and outer
//! chord triangulations, the pipeline constructs a dominating set of size at
//! most max{⌈2n/7⌉, ⌊5n/16⌋}, re-verifies it independently, and emits a
//! certificate. Two construction branches exist:
//!
//! - **outerplanar branch** — if one side has few 2-vertices, an exact
//!   dynamic program on that side's maximal outerplanar graph already meets
//!   ⌊5n/16⌋;
//! - **reduction branch** — otherwise the cycle-plus-hats skeleton is dense
//!   enough for a rewrite system that shrinks it case by case, solves a small
//!   or terminal instance exactly, and lifts the answer back through stored
//!   case tables, staying within ⌈2n/7⌉.
//!
//! Before branching, the Hamilton cycle is normalized so no three consecutive
//! vertices are 2-vertices (the rewrite system's entry invariant).
//!
//! Everything is desk-scale by design: exact oracles (branch-and-bound,
//! exhaustive search) live in [`testkit`] so each stage can be cross-checked
//! on small instances.

pub mod bench;
pub mod bounds;
pub mod hats;
pub mod error;
pub mod formats;
pub mod graph;
pub mod hamilton;
pub mod normalize;
pub mod outerplanar;
pub mod pipeline;
pub mod testkit;

pub use error::{Error, Result};
