//! Experiment plans, the theorem check registry, and graph input handling for the `diamwidth` binary.

pub mod experiment;
pub mod input;
pub mod theorems;
