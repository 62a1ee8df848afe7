pub mod error;
pub mod fejer;
pub mod gas;
pub mod oracle;
pub mod poly;
pub mod problem;
pub mod qsim;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
