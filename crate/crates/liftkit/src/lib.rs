//! liftkit — an exact-arithmetic toolkit for lifts (extended formulations)
//! of convex polytopes.
//!
//! The crate computes slack matrices, converts between cone factorizations
//! and lifts in both directions, generates structured polyhedral and
//! spectrahedral lifts from combinatorial inputs (decision diagrams, posets,
//! graphs, level structure, convex quadratics, honeycombs), and certifies
//! lower bounds on lift sizes. Everything runs over arbitrary-precision
//! rationals; certificates are always re-checked exactly.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod rational;
pub mod matrix;
pub mod lp;
pub mod psd;
pub mod dd;
pub mod polytope;
pub mod slack;
pub mod lifts;
pub mod factor;
pub mod liftgen;
pub mod honeycomb;

pub use rational::Rat;
