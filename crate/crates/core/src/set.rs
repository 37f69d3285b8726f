//! Bitset over a ground set `{0, .., n-1}`.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A subset of the ground set, stored as a bitset.
///
/// Sets built for the same ground-set size compare and hash consistently.
/// Display prints elements 1-based, e.g. `{2,4,5}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: SmallVec<[u64; 2]>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        Self {
            words: SmallVec::from_elem(0, n.div_ceil(WORD).max(1)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    /// The set whose membership is given by the low bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= WORD);
        let mut s = Self::empty(n);
        s.words[0] = mask;
        s
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.words[e / WORD] |= 1 << (e % WORD);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.words[e / WORD] &= !(1 << (e % WORD));
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.words
            .get(e / WORD)
            .is_some_and(|w| w & (1 << (e % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> ElementSet {
        let mut out = ElementSet::empty(n);
        for i in 0..n {
            if !self.contains(i) {
                out.insert(i);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the 0/1 indicator vectors, coordinate 0 first.
    pub fn cmp_indicator(&self, other: &ElementSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                return if a >> first & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    /// The indicator vector of length `n` as a space separated line of digits.
    pub fn indicator_line(&self, n: usize) -> String {
        let mut s = String::with_capacity(2 * n);
        for i in 0..n {
            if i > 0 {
                s.push(' ');
            }
            s.push(if self.contains(i) { '1' } else { '0' });
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        let all: Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(3, 0).count(), 1);
        assert_eq!(k_subsets(2, 3).count(), 0);
        assert_eq!(k_subsets(10, 4).count(), 210);
    }

    #[test]
    fn indicator_order_matches_digit_strings() {
        let n = 70;
        let sets = [
            ElementSet::from_elements(n, [0]),
            ElementSet::from_elements(n, [69]),
            ElementSet::from_elements(n, [1, 65]),
            ElementSet::from_elements(n, [1, 64]),
            ElementSet::empty(n),
        ];
        for a in &sets {
            for b in &sets {
                let sa = a.indicator_line(n);
                let sb = b.indicator_line(n);
                assert_eq!(a.cmp_indicator(b), sa.cmp(&sb));
            }
        }
    }

    #[test]
    fn basic_ops() {
        let mut s = ElementSet::from_elements(130, [3, 64, 129]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![3, 64, 129]);
        assert_eq!(s.to_string(), "{4,65,130}");
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.complement(130).len(), 128);
        assert!(ElementSet::empty(130).is_subset(&s));
    }
}
