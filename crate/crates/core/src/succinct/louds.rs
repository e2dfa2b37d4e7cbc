//! Level-ordered unary degree sequence: `10` for a super-root, then `1^d 0`
//! for every node in breadth-first order. Nodes are 1-based BFS ranks.

use super::bitvec::{BitVec, RankSelect};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Louds {
    rs: RankSelect,
}

impl Louds {
    /// Degrees listed in BFS order.
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut bits = BitVec::with_capacity(2 * degrees.len() + 1);
        bits.push(true);
        bits.push(false);
        for &d in degrees {
            for _ in 0..d {
                bits.push(true);
            }
            bits.push(false);
        }
        Louds { rs: RankSelect::new(bits) }
    }

    pub fn from_bits(bits: BitVec) -> Result<Self> {
        let rs = RankSelect::new(bits);
        let nodes = rs.count_ones();
        if rs.count_zeros() != nodes + 1 || rs.len() < 2 || !rs.bit(1) || rs.bit(2) {
            return Err(Error::Container("malformed LOUDS bit string".into()));
        }
        // every node must be introduced by a parent that precedes it
        let mut seen_zeros = 0usize;
        let mut ones = 0usize;
        for b in rs.bits().iter() {
            if b {
                ones += 1;
            } else {
                seen_zeros += 1;
            }
            if seen_zeros > ones + 1 || (seen_zeros > ones && seen_zeros <= nodes) {
                return Err(Error::Container("LOUDS bit string is not a tree".into()));
            }
        }
        Ok(Louds { rs })
    }

    pub fn bits(&self) -> &BitVec {
        self.rs.bits()
    }

    pub fn node_count(&self) -> usize {
        self.rs.count_ones()
    }

    pub fn degree(&self, r: usize) -> usize {
        self.rs.select0(r + 1) - self.rs.select0(r) - 1
    }

    pub fn child(&self, r: usize, i: usize) -> Result<usize> {
        let degree = self.degree(r);
        if i == 0 || i > degree {
            return Err(Error::ChildOutOfRange { index: i, degree });
        }
        Ok(self.rs.rank1(self.rs.select0(r) + i))
    }

    pub fn overhead_bits(&self) -> usize {
        self.rs.overhead_bits()
    }
}
