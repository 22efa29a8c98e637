//! File formats, DOT export, parallel enumeration and the command-line
//! front end for [`symlift_core`].
//!
//! Everything that touches the filesystem or threads lives here; the
//! algorithms themselves are in the `no_std` core crate.

pub mod cli;
pub mod dot;
mod error;
pub mod io;
pub mod parallel;

pub use error::{Error, Result};
pub use symlift_core as core;
