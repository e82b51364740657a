//! Command-line front end for the `monorel` linear-relation calculus.
//!
//! Relations enter as small JSON spec documents ([`spec`]), commands run the
//! library and assemble reports ([`app`]), and reports leave as structured
//! text or JSON ([`report`]). The binary in `main.rs` is a thin shell around
//! [`app::run`]; everything here is a library so the behavior is testable
//! in-process.

pub mod app;
pub mod report;
pub mod spec;

mod error;

pub use error::{CliError, Result};
