//! The `biform` command-line tool: JSON tensor documents, invariant and
//! Pontrjagin reports, purity checks and the randomized identity suite.

pub mod commands;
pub mod document;
pub mod sample;
pub mod verify;

pub use commands::{CliError, Output, PontrjaginSelection, VerifyOptions};
pub use document::{DocumentError, Kind, Tensor, TensorDocument};
pub use verify::{Identity, Status, VerificationReport, IDENTITIES};
