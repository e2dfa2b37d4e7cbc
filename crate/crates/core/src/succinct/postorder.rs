//! Post-order encoded full binary trees.
//!
//! Bit `0` marks a leaf and bit `1` an internal node; nodes are identified by
//! their 1-based post-order rank. Several trees may be concatenated into one
//! bit string, each addressed through a [`PostOrderTree`] view over its slice.
//! The excess `E[i] = rank0(i) - rank1(i)` drives `bwdsearch`, which is backed
//! by per-word minimum-excess summaries plus a min-tree over 512-bit blocks.

use super::bitvec::{BitVec, RankSelect};
use crate::error::{Error, Result};

const WORDS_PER_BLOCK: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostOrderBits {
    rs: RankSelect,
    /// min over the positions of word w of E[p] - E[64w]
    word_min: Vec<i8>,
    /// min-tree over absolute block minima; leaves start at `tree_leaves`
    tree: Vec<i64>,
    tree_leaves: usize,
}

impl PostOrderBits {
    pub fn new(bits: BitVec) -> Self {
        let len = bits.len();
        let nwords = len.div_ceil(64);
        let mut word_min = Vec::with_capacity(nwords);
        let nblocks = nwords.div_ceil(WORDS_PER_BLOCK);
        let mut block_min = vec![i64::MAX; nblocks];
        let mut e = 0i64;
        for w in 0..nwords {
            let base = e;
            let mut m = i64::MAX;
            for p in w * 64..((w + 1) * 64).min(len) {
                e += if bits.get(p) { -1 } else { 1 };
                m = m.min(e);
            }
            word_min.push((m - base) as i8);
            let b = w / WORDS_PER_BLOCK;
            block_min[b] = block_min[b].min(m);
        }
        let tree_leaves = nblocks.next_power_of_two().max(1);
        let mut tree = vec![i64::MAX; 2 * tree_leaves];
        tree[tree_leaves..tree_leaves + nblocks].copy_from_slice(&block_min);
        for k in (1..tree_leaves).rev() {
            tree[k] = tree[2 * k].min(tree[2 * k + 1]);
        }
        PostOrderBits { rs: RankSelect::new(bits), word_min, tree, tree_leaves }
    }

    pub fn rank_select(&self) -> &RankSelect {
        &self.rs
    }

    pub fn bits(&self) -> &BitVec {
        self.rs.bits()
    }

    pub fn len(&self) -> usize {
        self.rs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rs.is_empty()
    }

    /// `E[i]` for `0 <= i <= len`.
    #[inline]
    pub fn excess(&self, i: usize) -> i64 {
        i as i64 - 2 * self.rs.rank1(i) as i64
    }

    /// Largest `j` in `[lo, i)` with `E[j] = target`, given that `E` is
    /// greater than `target` on `[j+1, i]`.
    fn search_back(&self, i: usize, target: i64, lo: usize) -> Option<usize> {
        let bits = self.rs.bits();
        let mut j = i;
        let mut e = self.excess(i);
        // bit-by-bit until j sits on a word boundary
        while j % 64 != 0 {
            if j <= lo {
                return None;
            }
            e -= if bits.get(j - 1) { -1 } else { 1 };
            j -= 1;
            if e == target {
                return (j >= lo && j >= 1).then_some(j);
            }
        }
        // positions < j remain; j is a multiple of 64
        let mut w = j / 64;
        let block_start = |w: usize| (w / WORDS_PER_BLOCK) * WORDS_PER_BLOCK;
        if w > 0 {
            let first = block_start(w - 1);
            while w > first {
                w -= 1;
                if let Some(p) = self.check_word(w, target) {
                    return (p >= lo).then_some(p);
                }
                if w * 64 < lo {
                    return None;
                }
            }
        }
        // whole blocks before w / WORDS_PER_BLOCK
        let blk = w / WORDS_PER_BLOCK;
        let b = self.rightmost_block(blk, target)?;
        if (b + 1) * WORDS_PER_BLOCK * 64 < lo {
            return None;
        }
        let nwords = self.word_min.len();
        let mut w = ((b + 1) * WORDS_PER_BLOCK).min(nwords);
        while w > b * WORDS_PER_BLOCK {
            w -= 1;
            if let Some(p) = self.check_word(w, target) {
                return (p >= lo).then_some(p);
            }
        }
        unreachable!("block minimum promised a match")
    }

    /// Largest position in word `w` whose excess equals `target`, if the
    /// word's minimum reaches it.
    fn check_word(&self, w: usize, target: i64) -> Option<usize> {
        let base = self.excess(w * 64);
        if base + self.word_min[w] as i64 > target {
            return None;
        }
        let bits = self.rs.bits();
        let end = ((w + 1) * 64).min(self.len());
        let mut e = base;
        let mut found = None;
        for p in w * 64..end {
            e += if bits.get(p) { -1 } else { 1 };
            if e == target {
                found = Some(p + 1);
            }
        }
        debug_assert!(found.is_some());
        found
    }

    /// Rightmost block index `< before` whose minimum is `<= target`.
    fn rightmost_block(&self, before: usize, target: i64) -> Option<usize> {
        fn go(t: &[i64], node: usize, nl: usize, nr: usize, before: usize, target: i64) -> Option<usize> {
            if nl >= before || t[node] > target {
                return None;
            }
            if nr - nl == 1 {
                return Some(nl);
            }
            let mid = (nl + nr) / 2;
            go(t, 2 * node + 1, mid, nr, before, target).or_else(|| go(t, 2 * node, nl, mid, before, target))
        }
        go(&self.tree, 1, 0, self.tree_leaves, before, target)
    }

    /// Whole bit string as a single tree.
    pub fn tree(&self) -> PostOrderTree<'_> {
        PostOrderTree { bits: self, lo: 1, len: self.len() }
    }

    /// Tree stored at global positions `lo..lo+len` (1-based).
    pub fn slice(&self, lo: usize, len: usize) -> PostOrderTree<'_> {
        debug_assert!(lo >= 1 && lo + len - 1 <= self.len());
        PostOrderTree { bits: self, lo, len }
    }

    /// Checks that positions `lo..lo+len` hold a post-order full binary tree:
    /// every proper prefix has positive excess and the whole slice has excess 1.
    pub fn validate_slice(&self, lo: usize, len: usize) -> Result<()> {
        if len == 0 || len % 2 == 0 || lo == 0 || lo + len - 1 > self.len() {
            return Err(Error::Corrupt(format!("bad tree slice {lo}+{len}")));
        }
        let bits = self.rs.bits();
        let mut e = 0i64;
        for p in lo - 1..lo - 1 + len {
            e += if bits.get(p) { -1 } else { 1 };
            if e < 1 {
                return Err(Error::Corrupt(format!("tree slice at {lo} has a non-positive prefix excess")));
            }
        }
        if e != 1 {
            return Err(Error::Corrupt(format!("tree slice at {lo} has total excess {e}")));
        }
        Ok(())
    }

    pub fn overhead_bits(&self) -> usize {
        self.rs.overhead_bits() + self.word_min.len() * 8 + self.tree.len() * 64
    }
}

/// A full binary tree inside a [`PostOrderBits`], nodes numbered `1..=len`.
#[derive(Clone, Copy, Debug)]
pub struct PostOrderTree<'a> {
    bits: &'a PostOrderBits,
    lo: usize,
    len: usize,
}

impl PostOrderTree<'_> {
    #[inline]
    fn global(&self, v: usize) -> usize {
        self.lo + v - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn root(&self) -> usize {
        self.len
    }

    pub fn leaves(&self) -> usize {
        self.len.div_ceil(2)
    }

    #[inline]
    pub fn is_leaf(&self, v: usize) -> bool {
        !self.bits.rs.bit(self.global(v))
    }

    /// Local excess `E[i]`.
    pub fn excess(&self, i: usize) -> i64 {
        self.bits.excess(self.global(i)) - self.bits.excess(self.lo - 1)
    }

    /// Maximum `j <= i` with `E[j] = E[i] + d` for negative `d`.
    pub fn bwdsearch(&self, i: usize, d: i64) -> Option<usize> {
        assert!(d < 0, "only backward searches for smaller excess are supported");
        let g = self.global(i);
        let target = self.bits.excess(g) + d;
        self.bits.search_back(g, target, self.lo).map(|j| j - self.lo + 1)
    }

    #[inline]
    pub fn rchild(&self, v: usize) -> Result<usize> {
        if self.is_leaf(v) {
            return Err(Error::LeafHasNoChild(v));
        }
        Ok(v - 1)
    }

    #[inline]
    pub fn lchild(&self, v: usize) -> Result<usize> {
        if self.is_leaf(v) {
            return Err(Error::LeafHasNoChild(v));
        }
        self.bwdsearch(v - 1, -1)
            .ok_or_else(|| Error::Corrupt(format!("no left child for node {v}")))
    }

    #[inline]
    pub fn leafrank(&self, v: usize) -> usize {
        let rs = &self.bits.rs;
        rs.rank0(self.global(v)) - rs.rank0(self.lo - 1)
    }

    #[inline]
    pub fn rmleaf(&self, v: usize) -> usize {
        let rs = &self.bits.rs;
        rs.select0(rs.rank0(self.global(v))) - self.lo + 1
    }
}


#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;

    fn tree_of(s: &str) -> PostOrderBits {
        PostOrderBits::new(BitVec::from(s))
    }

    #[test]
    fn small_examples() {
        let pb = tree_of("00101");
        let t = pb.tree();
        assert_eq!((1..=5).map(|i| t.excess(i)).collect::<Vec<_>>(), vec![1, 2, 1, 2, 1]);
        assert_eq!(t.bwdsearch(4, -1), Some(3));
        assert_eq!(t.bwdsearch(2, -1), Some(1));
        assert_eq!(t.bwdsearch(5, -1), None);
        assert_eq!(t.lchild(5).unwrap(), 3);
        assert_eq!(t.rchild(5).unwrap(), 4);
        assert_eq!(t.rmleaf(3), 2);
        assert_eq!(t.leafrank(4), 3);
        assert!(!t.is_leaf(3));
        assert!(t.is_leaf(1));
        assert!(matches!(t.lchild(1), Err(Error::LeafHasNoChild(1))));
        assert!(matches!(t.rchild(4), Err(Error::LeafHasNoChild(4))));
    }

    fn check_against_oracle(s: &Shape, pb: &PostOrderBits, lo: usize) {
        let table = node_table(s);
        let t = pb.slice(lo, table.len());
        pb.validate_slice(lo, table.len()).unwrap();
        let e: Vec<i64> = {
            let mut acc = 0;
            table.iter().map(|n| { acc += if n.leaf { 1 } else { -1 }; acc }).collect()
        };
        for (k, info) in table.iter().enumerate() {
            let v = k + 1;
            assert_eq!(t.is_leaf(v), info.leaf);
            assert_eq!(t.rmleaf(v), info.rmleaf);
            if info.leaf {
                assert_eq!(t.leafrank(v), info.leafrank);
            } else {
                assert_eq!(t.lchild(v).unwrap(), info.left);
                assert_eq!(t.rchild(v).unwrap(), info.right);
            }
            // linear E-scan oracle for bwdsearch
            let want = (1..v).rev().find(|&j| e[j - 1] == e[v - 1] - 1);
            assert_eq!(t.bwdsearch(v, -1), want);
        }
    }

    #[test]
    fn exhaustive_small_trees() {
        let mut count = 0;
        for internal in 0..=8 {
            for s in all_shapes(internal) {
                let mut bits = String::new();
                s.postorder_bits(&mut bits);
                assert_eq!(s.size(), 2 * internal + 1);
                let pb = tree_of(&bits);
                check_against_oracle(&s, &pb, 1);
                count += 1;
            }
        }
        // 1+1+2+5+14+42+132+429+1430
        assert_eq!(count, 2056);
    }

    #[test]
    fn concatenated_trees_and_long_scans() {
        // many trees back to back; includes deep left spines so that
        // bwdsearch must cross words and blocks
        let mut shapes = Vec::new();
        let mut spine = Shape::Leaf;
        for _ in 0..1500 {
            spine = Shape::Node(Box::new(Shape::Leaf), Box::new(spine));
        }
        shapes.push(spine);
        let mut left = Shape::Leaf;
        for _ in 0..700 {
            left = Shape::Node(Box::new(left), Box::new(Shape::Leaf));
        }
        shapes.push(left);
        for s in all_shapes(4) {
            shapes.push(s);
        }
        let mut all = String::new();
        let mut starts = Vec::new();
        for s in &shapes {
            starts.push(all.len() + 1);
            s.postorder_bits(&mut all);
        }
        let pb = tree_of(&all);
        for (s, &lo) in shapes.iter().zip(&starts) {
            check_against_oracle(s, &pb, lo);
        }
    }

    #[test]
    fn rejects_bad_slices() {
        let pb = tree_of("0101001");
        assert!(pb.validate_slice(1, 3).is_err());
        assert!(pb.validate_slice(1, 2).is_err());
        assert!(pb.validate_slice(5, 3).is_ok());
        assert!(pb.validate_slice(2, 3).is_err());
        assert!(pb.validate_slice(3, 1).is_ok());
        assert!(pb.validate_slice(4, 1).is_err());
        assert!(pb.validate_slice(4, 5).is_err());
    }
}
