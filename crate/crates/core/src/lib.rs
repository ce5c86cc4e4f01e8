//! Cocompact lattices in complete Kac-Moody groups of small rank-one pieces,
//! built as finite complexes of finite groups and certified by exhaustive
//! verification of the covering conditions.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod cog;
pub mod constructions;
pub mod coxeter;
pub mod error;
pub mod intlinalg;
pub mod residues;

pub use error::{Error, Result};
