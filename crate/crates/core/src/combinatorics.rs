//! Multi-indices over `1..=n`, stored as bit sets, together with the shuffle
//! and complement signs used by every product in the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_DIM;

/// A strictly increasing tuple of indices in `1..=n`, the label of the basis
/// element `e_{i_1} ∧ ... ∧ e_{i_p}`.
///
/// Bit `i - 1` is set iff index `i` is present. The ambient dimension is not
/// stored; it is carried by the containing form and checked on construction.
///
/// The ordering is by length first and then lexicographic on the sorted
/// tuple, which makes `enumerate(n, p)` come out in lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Builds a multi-index from 1-based indices, validating them against `n`.
    pub fn new(indices: &[usize], n: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidIndex {
            indices: indices.to_vec(),
            n,
            reason,
        };
        if n > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n));
        }
        let mut bits = 0u32;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > n {
                return Err(invalid("index outside 1..=n"));
            }
            if i <= prev {
                return Err(invalid("indices must be strictly increasing"));
            }
            bits |= 1 << (i - 1);
            prev = i;
        }
        Ok(MultiIndex(bits))
    }

    /// Builds from indices without validation; panics on out-of-range input.
    pub fn from_indices(indices: &[usize]) -> Self {
        let bits = indices.iter().fold(0u32, |acc, &i| {
            assert!((1..=MAX_DIM).contains(&i), "index {i} out of range");
            acc | 1 << (i - 1)
        });
        MultiIndex(bits)
    }

    pub fn from_bits(bits: u32) -> Self {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The full index `(1, ..., n)`.
    pub fn full(n: usize) -> Self {
        MultiIndex(full_mask(n))
    }

    pub fn singleton(i: usize) -> Self {
        Self::from_indices(&[i])
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_DIM).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    /// Set difference `self \ other`.
    pub fn without(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & !other.0)
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    /// Largest index present, or 0 for the empty index.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Indices in increasing order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let low = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(low + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every sub-multi-index of the given size, in lexicographic order.
    pub fn subsets(self, size: usize) -> Vec<MultiIndex> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(size);
        fn rec(elems: &[usize], size: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if chosen.len() == size {
                out.push(MultiIndex::from_indices(chosen));
                return;
            }
            for k in start..elems.len() {
                if elems.len() - k < size - chosen.len() {
                    break;
                }
                chosen.push(elems[k]);
                rec(elems, size, k + 1, chosen, out);
                chosen.pop();
            }
        }
        if size <= elems.len() {
            rec(&elems, size, 0, &mut chosen, &mut out);
        }
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // The smallest differing index belongs to self.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// All `C(n, p)` multi-indices of length `p`, lexicographically ordered.
/// Returns an empty list when `p > n`.
pub fn enumerate(n: usize, p: usize) -> Vec<MultiIndex> {
    if p > n {
        return Vec::new();
    }
    MultiIndex::full(n).subsets(p)
}

/// Parity of the number of pairs `(i, j)` with `i ∈ I`, `j ∈ J`, `i > j`.
fn inversion_parity(i: MultiIndex, j: MultiIndex) -> u32 {
    let mut parity = 0;
    let mut rest = j.0;
    while rest != 0 {
        let low = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if low >= 31 { 0 } else { i.0 >> (low + 1) };
        parity ^= above.count_ones() & 1;
    }
    parity
}

/// `e_I ∧ e_J = sign · e_K`; `None` when the indices overlap.
pub fn merge_with_sign(i: MultiIndex, j: MultiIndex) -> Option<(MultiIndex, i8)> {
    if !i.is_disjoint(j) {
        return None;
    }
    let sign = if inversion_parity(i, j) == 0 { 1 } else { -1 };
    Some((i.union(j), sign))
}

/// Sign of `e_I ∧ e_J` relative to `e_{I ∪ J}` for disjoint indices.
pub(crate) fn shuffle_sign(i: MultiIndex, j: MultiIndex) -> i8 {
    debug_assert!(i.is_disjoint(j));
    if inversion_parity(i, j) == 0 {
        1
    } else {
        -1
    }
}

/// The sorted complement `Ic` of `I` in `(1..n)` and the sign with
/// `e_I ∧ e_Ic = sign · e_{1..n}`.
pub fn complement_with_sign(i: MultiIndex, n: usize) -> (MultiIndex, i8) {
    let ic = MultiIndex(full_mask(n) & !i.0);
    (ic, shuffle_sign(i, ic))
}
