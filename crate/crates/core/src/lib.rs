//! Periodic positive integral SL₂-tilings and the combinatorics around them:
//! triangulated annuli, infinite frieze patterns and Farey-graph paths.
//!
//! Conventions: rows are indexed bottom to top, and every adjacent minor
//! satisfies `u[i+1][j] * u[i][j+1] - u[i][j] * u[i+1][j+1] = 1`.

pub mod annulus;
pub mod bijection;
pub mod catalog;
mod decimal;
pub mod error;
pub mod farey;
pub mod frieze;
pub mod oracle;
pub mod par;
pub mod tiling;

pub use error::{Error, Result};
pub use par::Execution;
