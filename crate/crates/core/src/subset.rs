use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of `{0, .., 63}` stored as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(pub u64);

/// Largest ground set a mask can index.
pub const MASK_BITS: usize = 64;

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MASK_BITS);
        if n == MASK_BITS {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SubsetMask(it.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MASK_BITS && self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        SubsetMask(self.0 | (1u64 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    /// `{0..n} \ self`.
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Highest index plus one; zero for the empty set.
    pub fn bound(self) -> usize {
        MASK_BITS - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..self.bound()).filter(|&i| self.contains(i)).collect()
    }

    /// Canonical ordering key: cardinality, then the sorted index list.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices())
    }
}

/// Sorts subsets by cardinality, then lexicographically by sorted indices.
pub fn sort_canonical(sets: &mut [SubsetMask]) {
    sets.sort_by_key(|s| s.canonical_key());
}

/// All subsets of `{0..n}` of size `k`, in canonical order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(SubsetMask::from_indices(idx.iter().copied()));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= MASK_BITS) {
            return Err(serde::de::Error::custom(format!("subset index {bad} too large")));
        }
        Ok(SubsetMask::from_indices(idx))
    }
}
