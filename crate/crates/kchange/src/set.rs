//! Fixed-capacity bit set used for consistent-input sets and asked-query masks.

/// A set of indices in `0..capacity`, backed by 64-bit words.
///
/// The solver keys its memo table on these, so equality and hashing are
/// word-exact and the unused tail bits of the last word are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    capacity: usize,
    words: Box<[u64]>,
}

impl IndexSet {
    pub fn empty(capacity: usize) -> Self {
        let n_words = capacity.div_ceil(64).max(1);
        IndexSet {
            capacity,
            words: vec![0; n_words].into_boxed_slice(),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn clear_tail(&mut self) {
        let used = self.capacity % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.capacity == 0 {
            for w in self.words.iter_mut() {
                *w = 0;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.capacity);
        self.words[idx / 64] |= 1u64 << (idx % 64);
    }

    pub fn remove(&mut self, idx: usize) {
        debug_assert!(idx < self.capacity);
        self.words[idx / 64] &= !(1u64 << (idx % 64));
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx < self.capacity && self.words[idx / 64] & (1u64 << (idx % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Intersection with `other`.
    pub fn and(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        IndexSet {
            capacity: self.capacity,
            words,
        }
    }

    /// Set difference `self \ other`.
    pub fn and_not(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & !b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        IndexSet {
            capacity: self.capacity,
            words,
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.capacity, other.capacity);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        IndexSet {
            capacity: self.capacity,
            words,
        }
    }

    /// Size of the intersection, without materializing it.
    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &IndexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Lowest set index, if any.
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> SetIter<'_> {
        SetIter {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SetIter<'a> {
    set: &'a IndexSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for SetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word_idx];
        }
    }
}
