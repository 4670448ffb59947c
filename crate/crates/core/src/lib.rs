//! Relative and integral algebraic K-groups of the square-zero extensions
//! `R[x_1..x_d]/(x_1..x_d)^2`, the coordinate axes and the dual numbers, as
//! explicit finite abelian group expressions.
//!
//! The building blocks are exact: integer number theory ([`numtheory`]),
//! cyclic word counting ([`words`]), truncated Witt vectors ([`witt`]), and
//! the window functions ([`tbounds`]). [`kcalc`] assembles them into
//! [`kcalc::GroupExpr`] values and [`oracles`] checks everything it can
//! against brute-force enumeration.

pub mod cli;
pub mod error;
pub mod kcalc;
pub mod numtheory;
pub mod oracles;
pub mod tbounds;
pub mod witt;
pub mod words;

pub use error::{Error, Result};
