//! Fixed-width bitsets over at most 128 elements.
//!
//! Positive roots of every irreducible root system of rank at most 8 fit in
//! 128 bits (E8 has 120), so both ideals and hyperplane sets use this type.

use serde::{Deserialize, Serialize};
use std::fmt;

pub const MAX_BITS: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Mask(pub u128);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Mask {
        assert!(n <= MAX_BITS);
        if n == MAX_BITS {
            Mask(u128::MAX)
        } else {
            Mask((1u128 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Mask {
        Mask(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Mask {
        let mut m = Mask::EMPTY;
        for i in it {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Mask {
        Mask(!self.0 & Mask::full(n).0)
    }
}

impl std::ops::BitOr for Mask {
    type Output = Mask;
    fn bitor(self, o: Mask) -> Mask {
        Mask(self.0 | o.0)
    }
}

impl std::ops::BitOrAssign for Mask {
    fn bitor_assign(&mut self, o: Mask) {
        self.0 |= o.0;
    }
}

impl std::ops::BitAnd for Mask {
    type Output = Mask;
    fn bitand(self, o: Mask) -> Mask {
        Mask(self.0 & o.0)
    }
}

impl std::ops::BitAndAssign for Mask {
    fn bitand_assign(&mut self, o: Mask) {
        self.0 &= o.0;
    }
}

impl std::ops::Sub for Mask {
    type Output = Mask;
    fn sub(self, o: Mask) -> Mask {
        Mask(self.0 & !o.0)
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct MaskIter(u128);

impl Iterator for MaskIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}
