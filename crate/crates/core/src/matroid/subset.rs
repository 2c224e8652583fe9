use std::fmt;

use super::MatroidError;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 63;

/// A subset of a ground set `{0, .., n-1}`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const fn empty() -> Self {
        Subset(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_GROUND,
            "ground set of size {n} exceeds {MAX_GROUND}"
        );
        Subset((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GROUND, "element {i} exceeds the bitmask width");
        Subset(1 << i)
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset of `{0, .., n-1}`, rejecting out-of-range elements.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, MatroidError> {
        indices.iter().try_fold(Subset::empty(), |acc, &i| {
            if i >= n || i >= MAX_GROUND {
                Err(MatroidError::OutOfRange { element: i, n })
            } else {
                Ok(acc.with(i))
            }
        })
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of `{0, .., n-1}` with exactly `k` elements, in increasing
/// bitmask order (Gosper's hack).
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let candidate = (((r ^ cur) >> 2) / c) | r;
            (r != 0 && candidate < limit).then_some(candidate)
        };
        Some(Subset(cur))
    })
}
