//! Fixed-capacity bit sets over `u64` words.

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn with_items<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut b = Self::new(len);
        for i in items {
            b.insert(i);
        }
        b
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Least index not in the set, if any.
    pub fn first_absent(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find_map(|(k, &w)| (w != u64::MAX).then(|| k * 64 + (!w).trailing_zeros() as usize))
            .filter(|&i| i < self.len)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + t
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_operations() {
        let mut a = Bitset::new(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(a.count(), 3);
        assert_eq!(a.first_absent(), Some(1));
        a.remove(64);
        assert!(!a.contains(64));
        let b = Bitset::with_items(130, [0, 5]);
        assert_eq!(a.intersection_count(&b), 1);
        let mut c = a.clone();
        c.union_with(&b);
        assert!(b.is_subset(&c));
        c.intersect_with(&b);
        assert_eq!(c, b);
    }

    #[test]
    fn full_sets_have_no_absent_index() {
        assert_eq!(Bitset::full(64).first_absent(), None);
        assert_eq!(Bitset::full(70).first_absent(), None);
        assert_eq!(Bitset::new(0).first_absent(), None);
    }
}
