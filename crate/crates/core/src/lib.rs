//! Exact classification and verification engine for real Cayley M-octads.

pub mod bipartitions;
pub mod cli;
pub mod diagrams;
pub mod f2core;
pub mod geometry;
