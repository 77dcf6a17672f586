//! Exact self-avoiding-walk enumeration on vertex-transitive graphs and their
//! quotients, with event counts and ratio certificates.

pub mod bounds;
pub mod certificate;
pub mod engine;
pub mod error;
pub mod export;
pub mod graph;
pub mod quotient;

pub use error::{Error, Result};
