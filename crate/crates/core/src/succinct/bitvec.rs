//! Packed bit strings and a rank/select directory over them.
//!
//! Positions in the public rank/select API are 1-based and follow the
//! clamping conventions used throughout the encodings: `rank(b, i)` is 0 for
//! `i < 1` and the total count of `b` for `i > len`; `select(b, j)` is 0 for
//! `j < 1` and `len + 1` when fewer than `j` bits equal `b`.

use std::fmt;

use crate::error::{Error, Result};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const SELECT_SAMPLE: usize = 512;

/// A growable bit string, LSB-first within 64-bit words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitVec { words: Vec::with_capacity(bits.div_ceil(64)), len: 0 }
    }

    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len % 64 == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Bit at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// `width` bits starting at 0-based index `i`, LSB first.
    #[inline]
    pub fn get_bits(&self, i: usize, width: usize) -> u64 {
        if width == 0 {
            return 0;
        }
        let (w, off) = (i / 64, i % 64);
        let mut v = self.words[w] >> off;
        if off + width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if width < 64 {
            v &= (1u64 << width) - 1;
        }
        v
    }

    pub fn push_bits(&mut self, value: u64, width: usize) {
        for k in 0..width {
            self.push((value >> k) & 1 == 1);
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// LSB-first packed bytes, `ceil(len / 8)` of them.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        self.words.iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect()
    }

    /// Inverse of [`BitVec::to_bytes`]. Padding bits past `len` must be zero.
    pub fn from_bytes(len: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Container(format!(
                "bit string of length {len} needs {} bytes, found {}",
                len.div_ceil(8),
                bytes.len()
            )));
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &b) in bytes.iter().enumerate() {
            words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        if len % 64 != 0 {
            let last = words[len / 64];
            if last >> (len % 64) != 0 {
                return Err(Error::Container("nonzero padding bits".into()));
            }
        }
        Ok(BitVec { words, len })
    }
}

impl FromIterator<bool> for BitVec {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut bv = BitVec::new();
        for b in iter {
            bv.push(b);
        }
        bv
    }
}

impl From<&str> for BitVec {
    /// Parses a string of `0`/`1` characters; anything else is ignored.
    fn from(s: &str) -> Self {
        s.bytes().filter(|c| *c == b'0' || *c == b'1').map(|c| c == b'1').collect()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Select helper: 0-based index of the `k`-th (0-based) set bit in `w`.
#[inline]
fn select_in_word(mut w: u64, k: u32) -> u32 {
    for _ in 0..k {
        w &= w - 1;
    }
    w.trailing_zeros()
}

/// Bit string with constant-time rank and sampled select.
#[derive(Clone, PartialEq, Eq)]
pub struct RankSelect {
    bits: BitVec,
    /// ones strictly before each 512-bit block; one extra trailing entry
    blocks: Vec<u64>,
    /// block holding every 512th one (resp. zero)
    samples1: Vec<u32>,
    samples0: Vec<u32>,
    ones: usize,
}

impl RankSelect {
    pub fn new(bits: BitVec) -> Self {
        let nblocks = bits.len().div_ceil(BLOCK_BITS);
        let mut blocks = Vec::with_capacity(nblocks + 1);
        let mut acc = 0u64;
        let mut samples1 = Vec::new();
        let mut samples0 = Vec::new();
        for b in 0..nblocks {
            blocks.push(acc);
            let lo = b * WORDS_PER_BLOCK;
            let hi = (lo + WORDS_PER_BLOCK).min(bits.words.len());
            let ones_here: u64 = bits.words[lo..hi].iter().map(|w| w.count_ones() as u64).sum();
            let block_len = (bits.len() - b * BLOCK_BITS).min(BLOCK_BITS) as u64;
            let zeros_before = (b * BLOCK_BITS) as u64 - acc;
            // record the block of every one whose rank is 1 mod SELECT_SAMPLE
            while (samples1.len() * SELECT_SAMPLE) as u64 + 1 <= acc + ones_here {
                samples1.push(b as u32);
            }
            while (samples0.len() * SELECT_SAMPLE) as u64 + 1 <= zeros_before + block_len - ones_here
            {
                samples0.push(b as u32);
            }
            acc += ones_here;
        }
        blocks.push(acc);
        RankSelect { bits, blocks, samples1, samples0, ones: acc as usize }
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.ones
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        self.bits.get(i - 1)
    }

    /// Ones in the first `i` bits, `i <= len`.
    #[inline]
    fn rank1_raw(&self, i: usize) -> usize {
        let blk = i / BLOCK_BITS;
        let mut r = self.blocks[blk] as usize;
        let first = blk * WORDS_PER_BLOCK;
        let last = i / 64;
        for w in &self.bits.words[first..last] {
            r += w.count_ones() as usize;
        }
        let rem = i % 64;
        if rem > 0 {
            r += (self.bits.words[last] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        if i >= self.len() {
            return self.ones;
        }
        self.rank1_raw(i)
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        if i >= self.len() {
            return self.count_zeros();
        }
        i - self.rank1_raw(i)
    }

    #[inline]
    pub fn rank(&self, bit: bool, i: usize) -> usize {
        if bit {
            self.rank1(i)
        } else {
            self.rank0(i)
        }
    }

    #[inline]
    fn count_before_block(&self, bit: bool, b: usize) -> usize {
        if bit {
            self.blocks[b] as usize
        } else {
            b * BLOCK_BITS - self.blocks[b] as usize
        }
    }

    pub fn select(&self, bit: bool, j: usize) -> usize {
        let total = if bit { self.ones } else { self.count_zeros() };
        if j == 0 {
            return 0;
        }
        if j > total {
            return self.len() + 1;
        }
        let samples = if bit { &self.samples1 } else { &self.samples0 };
        let s = (j - 1) / SELECT_SAMPLE;
        let mut lo = samples[s] as usize;
        let mut hi = samples.get(s + 1).map_or(self.blocks.len() - 2, |&b| b as usize);
        // last block b in [lo, hi] with count_before_block(b) < j
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.count_before_block(bit, mid) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let mut need = j - self.count_before_block(bit, lo);
        let mut w = lo * WORDS_PER_BLOCK;
        loop {
            let word = if bit { self.bits.words[w] } else { !self.bits.words[w] };
            let c = word.count_ones() as usize;
            if c >= need {
                return w * 64 + select_in_word(word, (need - 1) as u32) as usize + 1;
            }
            need -= c;
            w += 1;
        }
    }

    #[inline]
    pub fn select1(&self, j: usize) -> usize {
        self.select(true, j)
    }

    #[inline]
    pub fn select0(&self, j: usize) -> usize {
        self.select(false, j)
    }

    /// Bits spent on the directories, excluding the bit string itself.
    pub fn overhead_bits(&self) -> usize {
        self.blocks.len() * 64 + (self.samples1.len() + self.samples0.len()) * 32
    }
}

impl fmt::Debug for RankSelect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankSelect({})", self.bits)
    }
}
