//! Checks shared by the standalone suites and the acceptance run.

#![allow(dead_code)]

pub mod monotone;
pub mod oracle;
