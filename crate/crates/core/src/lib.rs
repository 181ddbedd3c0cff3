//! Exact ideal arithmetic in imaginary quadratic orders `Z[√−d]` and
//! machinery for deciding, with witnesses, which of them have every ideal
//! generated by an idempotent pair principal.
//!
//! Layering, bottom-up:
//! - [`quad`]: elements, norms, divisibility, fixed-norm enumeration, units.
//! - [`lattice`]: HNF, kernels and exact solves over `Z²`.
//! - [`ideal`]: ideals as HNF lattices; sums, products, colons, inverses.
//! - [`factor`]: conductor, prime ideals, primary decomposition.
//! - [`princ`]: idempotent pairs, principality, classification sweeps.
//! - [`cert`] and [`report`]: JSON certificates and the command layer.

pub mod arith;
pub mod cert;
pub mod error;
pub mod factor;
pub mod ideal;
pub mod lattice;
pub mod princ;
pub mod quad;
pub mod report;

pub use arith::Int;
pub use error::{Error, Result};
pub use ideal::{FracIdeal, IdealLat};
pub use quad::{QuadElem, RingDesc, RingKind};
