pub mod acceptance;
pub mod decompose;
pub mod error;
pub mod fp;
pub mod jordan;
pub mod levi;
pub mod linalg;
pub mod records;
pub mod root_system;
pub mod sl2;
pub mod unipotent;
pub mod weyl;

pub use error::{Error, ErrorKind, Result};
