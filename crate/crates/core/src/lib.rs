pub mod error;
pub mod caps;
pub mod cli;
pub mod cones;
pub mod functors;
pub mod io;
pub mod linearizer;
pub mod moments;
pub mod poly;
pub mod qlinalg;
pub mod random;
pub mod stsp;
pub mod verify;

pub use error::{Error, Result};
