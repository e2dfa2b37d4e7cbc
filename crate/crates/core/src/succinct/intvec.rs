use super::bitvec::BitVec;
use crate::error::{Error, Result};

/// Fixed-width unsigned integer array packed into a [`BitVec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVec {
    bits: BitVec,
    width: usize,
    len: usize,
}

impl IntVec {
    pub fn new(width: usize) -> Self {
        assert!(width <= 64);
        IntVec { bits: BitVec::new(), width, len: 0 }
    }

    pub fn from_values(width: usize, values: impl IntoIterator<Item = u64>) -> Self {
        let mut iv = IntVec::new(width);
        for v in values {
            iv.push(v);
        }
        iv
    }

    pub fn push(&mut self, v: u64) {
        debug_assert!(self.width == 64 || v >> self.width == 0, "{v} does not fit in {} bits", self.width);
        self.bits.push_bits(v, self.width);
        self.len += 1;
    }

    /// 0-based.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        self.bits.get_bits(i * self.width, self.width)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn bit_len(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn from_bits(bits: BitVec, width: usize) -> Result<Self> {
        let len = match width {
            0 if bits.is_empty() => 0,
            0 => return Err(Error::Container("zero-width array with nonzero length".into())),
            w if bits.len() % w == 0 => bits.len() / w,
            w => {
                return Err(Error::Container(format!(
                    "array of {} bits is not a multiple of width {w}",
                    bits.len()
                )))
            }
        };
        Ok(IntVec { bits, width, len })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_and_read() {
        for width in [1usize, 3, 7, 13, 31, 33, 63, 64] {
            let mask = if width == 64 { u64::MAX } else { (1 << width) - 1 };
            let vals: Vec<u64> = (0..200u64).map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15) & mask).collect();
            let iv = IntVec::from_values(width, vals.iter().copied());
            assert_eq!(iv.len(), 200);
            assert_eq!(iv.bit_len(), 200 * width);
            assert_eq!(iv.iter().collect::<Vec<_>>(), vals);
            let back = IntVec::from_bits(iv.bits().clone(), width).unwrap();
            assert_eq!(back, iv);
        }
    }

    #[test]
    fn bad_lengths() {
        assert!(IntVec::from_bits(BitVec::from("101"), 2).is_err());
        assert!(IntVec::from_bits(BitVec::from("1"), 0).is_err());
        assert_eq!(IntVec::from_bits(BitVec::new(), 0).unwrap().len(), 0);
    }
}
