//! Integral cohomology of Eilenberg–MacLane spaces `K(Z, n)` by exact
//! spectral-sequence bookkeeping on the path-loop fibration.
//!
//! Layers, bottom up:
//! - [`intlin`]: Smith normal form and lattice helpers over `BigInt`.
//! - [`fgab`]: canonical finitely generated abelian groups and maps.
//! - [`uct`]: universal-coefficient conversions between graded tables.
//! - [`ssengine`]: first-quadrant cohomological spectral sequence pages.
//! - [`tower`]: the "everything must die" solver for `K(Z, n)`.
//! - [`replication`]: comparison against the published `K(Z,4)` and `K(Z,5)` tables.
//! - [`towerfile`]: the versioned JSON tower format.

pub mod error;
pub mod fgab;
pub mod intlin;
pub mod replication;
pub mod ssengine;
pub mod tower;
pub mod towerfile;
pub mod uct;

pub use error::{Error, Result};
pub use fgab::{FgAbGroup, GroupMap};
pub use intlin::{IntMatrix, SnfResult};
