use std::fmt;

use super::Gen;

/// A set of generator indices, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(s: Gen) -> Self {
        GenSet(1 << s)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, s: Gen) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: Gen) {
        self.0 |= 1 << s;
    }

    pub fn remove(&mut self, s: Gen) {
        self.0 &= !(1 << s);
    }

    pub fn with(self, s: Gen) -> Self {
        GenSet(self.0 | 1 << s)
    }

    pub fn without(self, s: Gen) -> Self {
        GenSet(self.0 & !(1 << s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<Gen> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Gen)
    }

    pub fn max(self) -> Option<Gen> {
        (self.0 != 0).then(|| (63 - self.0.leading_zeros()) as Gen)
    }

    pub fn union(self, other: Self) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Gen> {
        (0..64u8).filter(move |&s| self.contains(s))
    }
}

impl FromIterator<Gen> for GenSet {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        let mut s = GenSet::EMPTY;
        for g in iter {
            s.insert(g);
        }
        s
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
