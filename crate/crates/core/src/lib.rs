//! Exact-arithmetic workbench for representations of the quivers `Q_{m,n}`,
//! `Q_{inf x inf}` and their affine type-A quotients.
//!
//! Everything is computed over the rationals. Infinite quivers are described
//! by rules, and representations are finitely supported.

pub mod error;
pub mod functors;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod rep;
pub mod workbench;

pub use error::{Error, Result};
