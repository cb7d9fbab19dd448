//! Bruhat order intervals in crystallographic Coxeter groups, and the
//! step-by-step construction of poset isomorphisms between such intervals
//! and torus-invariant prime spectra of iterated Ore extensions.

pub mod bruhat;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod extension;
pub mod poset;
pub mod pushout;
pub mod selftest;
pub mod spectra;

pub use error::{Error, Result};
