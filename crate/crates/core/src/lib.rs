//! Exact realizations of super Yangians, twisted super Yangians of type AIII
//! and degenerate affine Hecke algebras acting on finite-dimensional modules.

pub mod daha;
pub mod drinfeld;
pub mod error;
pub mod exactalg;
pub mod glmn;
pub mod par;
pub mod serial;
pub mod superlinalg;
pub mod twisted;
pub mod yangian;

pub use error::{Error, Result};
