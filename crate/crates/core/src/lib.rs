//! Sequent calculus proof checking and tutoring for first-order logic with
//! equality.

// Diagnostics are the error payload of most calls; boxing them buys nothing.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod engine;
pub mod formula;
pub mod sequent;
pub mod proof;
pub mod semantics;
pub mod feedback;
pub mod corpus;
pub mod service;
