//! Configuration and element parsing plus subcommand dispatch for the
//! `divalg` binary.

pub mod commands;
pub mod config;
pub mod expr;
