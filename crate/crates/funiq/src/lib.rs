//! Construction and numerical verification of Fourier uniqueness node pairs.
//!
//! The crate is organized around four working parts plus the command-line
//! surface that drives them:
//!
//! - [`weights`] - increasing weight functions `S`, their generalized
//!   inverses, admissibility certification, and Taylor-series machinery.
//! - [`nodes`] - node-sequence generators that saturate weighted gap
//!   conditions, the gap-condition verifier, and criticality classification.
//! - [`density`] - counting-function analytics: the integral Fenchel–Young
//!   inequality, window-count density scans, the `4WT - C log^2(4WT)`
//!   necessary condition, and zeta-ordinates gap statistics.
//! - [`probe`] - a sampled-function engine with a unitary discrete Fourier
//!   transform, the Poincaré–Wirtinger-type inequality checks, and a
//!   singular-value probe of discretized sampling operators.
//!
//! Every operation is pure given its inputs; there is no shared mutable
//! state, so everything here is safe to call concurrently.
//!
//! See the crate examples for end-to-end usage of each capability, and the
//! `funiq` binary for the file-oriented CLI.

#![forbid(unsafe_code)]

pub mod cli;
pub mod density;
pub mod error;
pub mod io;
pub mod nodes;
pub mod numerics;
pub mod probe;
pub mod weights;

pub use error::{Error, Result};
