pub mod cli;
pub mod comod;
pub mod datum;
pub mod error;
pub mod group;
pub mod hopf;
pub mod limits;
pub mod linalg;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod stab;
pub mod twist;

pub use error::{Error, Result};
