//! Core library for verifying 1-skeleton posets of directionally simple
//! polytopes, with Bruhat interval polytopes as the main family.
//!
//! The layers, bottom to top:
//!
//! - [`symgroup`]: exact symmetric-group combinatorics (Bruhat order,
//!   reduced words, cover transpositions).
//! - [`exactgeom`]: a rational simplex solver and LP-backed polytope
//!   oracles (adjacency, smallest face, face tests, orientations).
//! - [`skeleton`]: 1-skeleton posets and their structural checks
//!   (lattice, directional simplicity, pseudojoins, Möbius, face
//!   criterion).
//! - [`topology`]: order complexes, Euler characteristics, and mod-2
//!   homology verdicts for open intervals.
//! - [`moves`]: saturated chains, flips across 2-faces, move graphs, and
//!   their vertex connectivity.
//! - [`bcfw`]: bridge sequences of chains for Grassmannian permutations
//!   and their plabic-graph realizations with trip permutations.

pub mod bitset;
pub mod exactgeom;
pub mod skeleton;
pub mod bcfw;
pub mod moves;
pub mod symgroup;
pub mod topology;

pub use exactgeom::{Rat, RationalPolytope};
pub use skeleton::{build_bip_poset, build_generic_poset, SkeletonPoset};
pub use symgroup::Permutation;
