//! Fixed-parameter solvers that branch above the LP lower bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`flownet`]: half-integral s-t networks, augmenting paths, residual
//!   graphs and strongly connected components.
//! * [`vclp`]: the vertex-cover LP expressed as a bipartite flow network,
//!   with primal extraction and integral fixing.
//! * [`vcal`]: the `O(4^k (|V|+|E|))` branching search for vertex cover
//!   above LP.
//! * [`bip2`]: binarized two-variable integer programs and their
//!   gap-preserving reduction to vertex cover.
//! * [`frontends`]: encoders, decoders and verifiers for concrete problems.
//! * [`multiway`]: node multiway cut via farthest minimum isolating cuts.
//! * [`oracle`]: brute-force and exact-LP baselines plus instance generators.

pub mod bip2;
pub mod flownet;
pub mod frontends;
pub mod half;
pub mod multiway;
pub mod oracle;
pub mod vcal;
pub mod vclp;

pub use half::{BigWeight, HalfInt};
