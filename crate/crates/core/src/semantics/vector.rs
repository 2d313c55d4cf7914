use std::fmt;

use smallvec::{smallvec, SmallVec};

/// Frames of up to 128 positions need no heap allocation.
type Bits = SmallVec<[u64; 2]>;

/// One truth value per suffix class (LTL) or per state (CTL), packed into
/// 64-bit words. Bits past `len` are always zero, so derived equality and
/// hashing are semantic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SatisfactionVector {
    len: usize,
    bits: Bits,
}

impl SatisfactionVector {
    pub fn zeros(len: usize) -> Self {
        SatisfactionVector {
            len,
            bits: smallvec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = SatisfactionVector {
            len,
            bits: smallvec![u64::MAX; len.div_ceil(64)],
        };
        v.mask();
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = SatisfactionVector::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    fn mask(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let mut v = SatisfactionVector {
            len: self.len,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect(),
        };
        v.mask();
        v
    }

    pub fn not(&self) -> Self {
        let mut v = SatisfactionVector {
            len: self.len,
            bits: self.bits.iter().map(|b| !b).collect(),
        };
        v.mask();
        v
    }

    pub fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn implies(&self, other: &Self) -> Self {
        self.zip(other, |a, b| !a | b)
    }

    pub fn iff(&self, other: &Self) -> Self {
        self.zip(other, |a, b| !(a ^ b))
    }
}

impl fmt::Debug for SatisfactionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
