use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A subset of the simple roots, stored as a bitmask over the fixed
/// ordering `α_1..α_r` (bit `i` is `α_{i+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootSubset(pub u32);

impl RootSubset {
    pub const EMPTY: RootSubset = RootSubset(0);

    pub fn full(rank: usize) -> Self {
        RootSubset(((1u64 << rank) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        RootSubset(1 << i)
    }

    /// Builds a subset from zero-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        RootSubset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, o: Self) -> Self {
        RootSubset(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        RootSubset(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        RootSubset(self.0 & !o.0)
    }

    /// `Δ ∖ self` for a root system of the given rank.
    pub fn complement(self, rank: usize) -> Self {
        Self::full(rank).difference(self)
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m >> i & 1 == 1)
    }

    /// All subsets of `Δ` in bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = RootSubset> {
        (0..1u32 << rank).map(RootSubset)
    }

    /// All subsets of `self` in bitmask order (including `∅` and `self`).
    pub fn subsets(self) -> impl Iterator<Item = RootSubset> {
        let m = self.0;
        (0..=m).filter(move |s| s & !m == 0).map(RootSubset)
    }

    /// One-based sorted index list, as used in serialized output.
    pub fn one_based(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    pub fn to_label(self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for RootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_one_based() {
        assert_eq!(RootSubset::from_indices([0, 2]).to_label(), "[1,3]");
        assert_eq!(RootSubset::EMPTY.to_label(), "[]");
    }

    #[test]
    fn subsets_enumeration() {
        let s = RootSubset::from_indices([0, 2]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 4);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(RootSubset::all(3).count(), 8);
        assert_eq!(RootSubset::EMPTY.complement(3), RootSubset::full(3));
    }
}
