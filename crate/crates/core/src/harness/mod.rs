//! Exact oracles, instance generators and verification drivers.

pub mod generate;
pub mod oracle;
mod verify;

pub use verify::{verify, Check, Status, VerifyReport};
