pub mod access;
pub mod container;
pub mod encoding;
pub mod error;
pub mod scd;
pub mod slp;
pub mod succinct;
pub mod testing;
pub mod trie;
pub mod verify;

pub use access::{access, extract, QueryStats};
pub use encoding::{AnyEncoding, Scheme, SlpEncoding};
pub use error::{Error, Result, Violation};
pub use slp::{Slp, SymbolId};
