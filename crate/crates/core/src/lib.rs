//! Computational toolkit for conjugation and Dehn quandles of
//! Baumslag-Solitar groups.

pub mod bs;
pub mod classify;
pub mod closure;
pub mod error;
pub mod free_quandle;
pub mod homs;
pub mod perm;
pub mod quandle;
pub mod term;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
