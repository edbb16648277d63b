//! Subsets of coordinate indices `{0, .., n-1}` packed into a bitmask.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient dimension an [`IndexSet`] can address.
pub const MAX_INDEX_DIM: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const fn empty() -> Self {
        IndexSet(0)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_INDEX_DIM);
        if n == MAX_INDEX_DIM {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Build from explicit indices, rejecting anything `>= n`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut set = IndexSet::empty();
        for &i in indices {
            if i >= n || i >= MAX_INDEX_DIM {
                return Err(Error::invalid(format!("index {i} out of range for dimension {n}")));
            }
            set.insert(i);
        }
        Ok(set)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_INDEX_DIM && self.0 & (1u64 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IndexSet) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: IndexSet) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(IndexSet(cur))
        })
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = IndexSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        IndexSet::from_indices(MAX_INDEX_DIM, &v).map_err(serde::de::Error::custom)
    }
}

/// Guard for algorithms that enumerate all `2^n` subsets.
pub(crate) fn check_subset_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > MAX_INDEX_DIM {
        Err(Error::DimensionTooLarge { dim: n, cap })
    } else {
        Ok(())
    }
}
