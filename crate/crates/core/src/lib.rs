pub mod char_table;
pub mod characters;
pub mod charsums;
pub mod cli;
pub mod cyclotomic;
pub mod derangement;
pub mod ekr;
pub mod error;
pub mod field;
pub mod group;

pub use error::{Error, Result};
