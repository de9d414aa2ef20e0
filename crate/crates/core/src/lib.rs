//! Exact computational tools for Nichols algebras over finite groups: group tables,
//! conjugation racks, Yetter–Drinfeld braidings, quantum symmetrizers and a
//! classification driver for nilpotent groups of odd order.

pub mod classify;
pub mod cyclo;
pub mod error;
pub mod grp;
pub mod nichols;
pub mod rack;
pub mod ydmod;

pub use error::{Error, Result};
