//! Finite zero-symmetric near-rings with identity.

pub mod bitset;
pub mod construct;
pub mod error;
pub mod fields;
pub mod format;
pub mod groups;
pub mod ring;
pub mod search;
pub mod structure;

pub use error::{Axiom, Error, Result, Table, Violation};
pub use ring::NearRing;
