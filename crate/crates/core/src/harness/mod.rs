//! Serialization, seeded generation and verification shared by the command
//! line tool and the test suites.

pub mod format;
pub mod generate;
pub mod verify;

pub use format::{InstanceFile, FORMAT_VERSION};
pub use generate::{generate, DEFAULT_HEIGHT};
pub use verify::{invariant_checks, verify_pair, Outcome, RunReport};
