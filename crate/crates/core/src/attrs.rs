use std::fmt;

use smallvec::SmallVec;

/// A set of attribute indices, stored as a bitset.
///
/// Indices are 0-based internally; the text formats present them 1-based.
/// The representation is kept normalized (no trailing zero words) so that
/// derived equality and ordering are set equality and a total order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttrSet {
    words: SmallVec<[u64; 2]>,
}

impl AttrSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut words = SmallVec::new();
        if mask != 0 {
            words.push(mask);
        }
        Self { words }
    }

    /// The first `count` indices, `{0, .., count-1}`.
    pub fn prefix(count: usize) -> Self {
        Self::range(0, count)
    }

    /// Indices `start .. start + count`.
    pub fn range(start: usize, count: usize) -> Self {
        (start..start + count).collect()
    }

    pub fn insert(&mut self, index: usize) {
        let (w, b) = (index / 64, index % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, index: usize) {
        let (w, b) = (index / 64, index % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        let (w, b) = (index / 64, index % 64);
        self.words.get(w).is_some_and(|word| word >> b & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `|self ∩ other|`
    pub fn intersection_len(&self, other: &AttrSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &AttrSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// Largest index in the set.
    pub fn max_index(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Whether every index is below `k`.
    pub fn within(&self, k: usize) -> bool {
        self.max_index().is_none_or(|m| m < k)
    }

    /// The set as a single word, if all indices fit below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = AttrSet::new();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_normalizes() {
        let mut s = AttrSet::new();
        s.insert(70);
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert_eq!(s.max_index(), Some(70));
        s.remove(70);
        assert_eq!(s, AttrSet::from_mask(1 << 3));
        assert_eq!(s.to_mask(), Some(8));
    }

    #[test]
    fn intersection_across_words() {
        let a: AttrSet = [1, 64, 100].into_iter().collect();
        let b: AttrSet = [64, 100, 127].into_iter().collect();
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 64, 100]);
        assert!(a.within(101));
        assert!(!a.within(100));
    }

    #[test]
    fn prefix_and_range() {
        assert_eq!(AttrSet::prefix(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(AttrSet::range(2, 2).iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(AttrSet::prefix(0).is_empty());
    }
}
