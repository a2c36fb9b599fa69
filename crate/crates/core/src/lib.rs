//! Root data, nilpotent orbit combinatorics, Artinian quotients of orbit
//! schemes and the refined Hikita comparison for parabolic pairs.

pub mod error;
pub mod hikita;
pub mod orbitcartan;
pub mod partitions;
pub mod polyring;
pub mod rootdata;

pub use error::{Error, Result};
