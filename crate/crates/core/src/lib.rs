//! Exact lattice models of automorphism and birational-automorphism actions
//! on the nef and movable cones of Picard-number-two Calabi-Yau manifolds.
//!
//! Everything below the renderer is exact: coordinates live in a real
//! quadratic field ([`qfield`]), group elements are integer matrices
//! ([`conegeo`]), and every containment or ordering test is decided by exact
//! sign computations.

pub mod chern;
pub mod commands;
pub mod conegeo;
pub mod fundom;
pub mod groupclass;
pub mod qfield;
pub mod render;
pub mod scenario;

pub use conegeo::{Cone2, LatMat, Ray, Vec2};
pub use groupclass::{Action, ActionScenario, GroupKind, GroupProfile};
pub use qfield::{Rat, QF};
