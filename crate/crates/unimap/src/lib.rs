//! Unicellular maps, C-decorated trees, and everything that counts them.
//!
//! A unicellular map is a connected graph embedded on a closed orientable
//! surface so that the complement of the graph is a single disk. This crate
//! provides:
//!
//! - [`rotation`]: rooted maps as rotation systems, corner labelling,
//!   trisections, and the recursive vertex slicing/gluing bijection.
//! - [`ctree`]: plane trees, C-permutations, C-decorated trees, the
//!   signed-sequence bijection, and both Rémy isomorphisms.
//! - [`bijection`]: the fractional (stochastic) bijection between
//!   `2^(n+1)` copies of genus-g unicellular maps and C-decorated trees,
//!   and the exact uniform sampler built on it.
//! - [`counting`]: exact evaluators for the classical counting formulas
//!   (Lehman-Walsh, Harer-Zagier series and recurrence, Goupil-Schaeffer,
//!   Jackson, Morales-Vassilieva, covered maps).
//! - [`stanley`]: Stanley character polynomials via free cumulants and the
//!   genus-adding operator `D`.
//! - [`constellation`]: 3-constellations, quasi-constellations, prickly
//!   trees and their induction relations.
//! - [`oracle`]: brute-force exhaustive enumerators that independently
//!   verify every formula and bijection at desk scale.
//!
//! All arithmetic in the counting layers is exact (`num-bigint` /
//! `num-rational`); identities are checked as equalities, never with
//! tolerances.

pub mod bijection;
pub mod constellation;
pub mod counting;
pub mod ctree;
pub mod oracle;
pub mod perm;
pub mod rotation;
pub mod stanley;

pub use ctree::{CDecoratedTree, CPermutation, PlaneTree, SignedSequence};
pub use perm::Perm;
pub use rotation::RotationMap;
