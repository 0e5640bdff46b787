//! Enumeration and verification engine for the Hopf algebra of reduced pipe dreams,
//! the permutation Hopf algebra it maps onto, ν-trees and ν-Tamari lattices,
//! Dyck path statistics, and Hopf-chain statistics.

pub mod cli;
pub mod error;
pub mod harmonics;
pub mod hopf;
pub mod linear;
pub mod nutamari;
pub mod paths;
pub mod permutation;
pub mod pipedream;

pub use error::{Error, Result};
