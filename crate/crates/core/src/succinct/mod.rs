//! Bit-level building blocks shared by all encodings.

pub mod bitvec;
pub mod intvec;
pub mod louds;
pub mod postorder;

pub use bitvec::{BitVec, RankSelect};
pub use intvec::IntVec;
pub use louds::Louds;
pub use postorder::{PostOrderBits, PostOrderTree};
