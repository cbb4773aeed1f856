//! Exact calculus for integral Wu classes of spin and spin^c bundles, with
//! bordism verdicts on characteristic-number records and integral homology
//! of finite groups.

pub mod arith;
pub mod bordism;
pub mod char_class;
pub mod cli;
pub mod error;
pub mod group;
pub mod series;

pub use error::{Error, Result};
