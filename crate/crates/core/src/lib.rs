pub mod bruteforce;
pub mod deodhar;
pub mod error;
pub mod pointcount;
pub mod root_weyl;
pub mod suites;
pub mod twist;

pub use error::{Error, Result};
