//! Exact permutation-group computations for rotating-square tile puzzles.
//!
//! A *figure* is a union of overlapping `k x (k+1)` rectangles of unit tiles;
//! the puzzle group is generated by clockwise quarter-turns of every `k x k`
//! block that fits inside the figure. This crate models figures, computes the
//! generated group exactly (orbits, double transitivity, base and strong
//! generating set), verifies the closed-form identities and cycle charts that
//! drive the classification of these groups, constructs explicit 3-cycle
//! words, classifies the group of any admissible figure, and decides
//! solvability of scrambled arrangements with constructive solution words.

pub mod classifier;
pub mod engine;
pub mod figure;
pub mod identities;
pub mod perm;
pub mod solver;
pub mod three_cycle;
pub mod word;

pub use figure::{Figure, FigureSpec, Orientation, RectPlacement, RotationSite};
pub use perm::{CycleType, PermError, Permutation};
pub use word::{Letter, Word};
