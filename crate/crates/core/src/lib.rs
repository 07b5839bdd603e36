pub mod algebra;
pub mod chern;
pub mod error;
pub mod grassmannian;
pub mod par;
pub mod partition;
pub mod poly;
pub mod symmetric;
pub mod thom;

pub use error::{Error, Result};
pub use partition::Partition;
