//! Fixed-width bitsets over loop element indices.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

const INLINE_WORDS: usize = 2;

#[derive(Clone, PartialEq, Eq)]
enum Bits {
    /// Tables up to 128 elements stay in two machine words; the ambient
    /// loop here has 120.
    Inline([u64; INLINE_WORDS]),
    Heap(Vec<u64>),
}

/// A subset of element indices of an ambient Cayley table, with cached
/// cardinality. Subloops produced by closure are represented this way.
#[derive(Clone, PartialEq, Eq)]
pub struct SubloopSet {
    universe: usize,
    len: usize,
    bits: Bits,
}

impl SubloopSet {
    pub fn empty(universe: usize) -> SubloopSet {
        let bits = if universe <= 64 * INLINE_WORDS {
            Bits::Inline([0; INLINE_WORDS])
        } else {
            Bits::Heap(vec![0; universe.div_ceil(64)])
        };
        SubloopSet {
            universe,
            len: 0,
            bits,
        }
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> SubloopSet {
        let mut set = SubloopSet::empty(universe);
        for &i in indices {
            set.insert(i);
        }
        set
    }

    pub fn full(universe: usize) -> SubloopSet {
        let mut set = SubloopSet::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn words(&self) -> &[u64] {
        match &self.bits {
            Bits::Inline(w) => w,
            Bits::Heap(w) => w,
        }
    }

    fn words_mut(&mut self) -> &mut [u64] {
        match &mut self.bits {
            Bits::Inline(w) => w,
            Bits::Heap(w) => w,
        }
    }

    /// Returns true if the index was newly inserted.
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        let word = &mut self.words_mut()[i / 64];
        let mask = 1u64 << (i % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.words()[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn is_subset(&self, other: &SubloopSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words()
            .iter()
            .zip(other.words())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &SubloopSet) {
        debug_assert_eq!(self.universe, other.universe);
        match (&mut self.bits, &other.bits) {
            (Bits::Inline(a), Bits::Inline(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x |= y;
                }
            }
            (Bits::Heap(a), Bits::Heap(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x |= y;
                }
            }
            _ => unreachable!("mismatched bitset layouts"),
        }
        self.len = self.words().iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn intersection_len(&self, other: &SubloopSet) -> usize {
        debug_assert_eq!(self.universe, other.universe);
        self.words()
            .iter()
            .zip(other.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words().iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl Hash for SubloopSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.words().hash(state);
    }
}

/// Lexicographic order on the ascending index sequences: the set whose
/// first differing element is smaller comes first; a proper prefix comes
/// first. This makes "lexicographically least member" of an orbit well
/// defined and stable.
impl Ord for SubloopSet {
    fn cmp(&self, other: &SubloopSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for SubloopSet {
    fn partial_cmp(&self, other: &SubloopSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubloopSet {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = SubloopSet::empty(120);
        assert!(s.insert(0));
        assert!(s.insert(119));
        assert!(!s.insert(0));
        assert!(s.contains(0) && s.contains(119) && !s.contains(60));
        assert_eq!(s.len(), 2);
        assert_eq!(s.indices(), vec![0, 119]);
    }

    #[test]
    fn heap_layout_for_large_universe() {
        let mut s = SubloopSet::empty(300);
        s.insert(299);
        assert!(s.contains(299));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn subset_and_union() {
        let a = SubloopSet::from_indices(10, &[1, 3]);
        let b = SubloopSet::from_indices(10, &[1, 3, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        let mut c = a.clone();
        c.union_with(&b);
        assert_eq!(c, b);
        assert_eq!(a.intersection_len(&b), 2);
    }

    #[test]
    fn lexicographic_order() {
        let a = SubloopSet::from_indices(10, &[0, 5]);
        let b = SubloopSet::from_indices(10, &[0, 5, 7]);
        let c = SubloopSet::from_indices(10, &[1, 2]);
        assert!(a < b, "proper prefix comes first");
        assert!(b < c, "smaller first element wins");
    }
}
