#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod cycles;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod invariants;
pub mod io;
pub mod patterns;

pub use error::{Error, PositionFailure, Result};
