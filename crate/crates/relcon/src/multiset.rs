//! Finite multisets with pointwise operations.
//!
//! The representation never stores a zero count, so derived equality and
//! ordering are structural.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FMultiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

/// The four pointwise operations on multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pointwise {
    Intersection,
    Union,
    Sum,
    Difference,
}

impl<T: Ord> Default for FMultiset<T> {
    fn default() -> Self {
        FMultiset { counts: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> FMultiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: T) -> Self {
        Self::from_counts([(x, 1)])
    }

    /// Zero counts are dropped; repeated keys add up.
    pub fn from_counts<I: IntoIterator<Item = (T, usize)>>(items: I) -> Self {
        let mut m = Self::new();
        for (x, n) in items {
            m.insert_n(x, n);
        }
        m
    }

    pub fn insert(&mut self, x: T) {
        self.insert_n(x, 1);
    }

    pub fn insert_n(&mut self, x: T, n: usize) {
        if n > 0 {
            *self.counts.entry(x).or_insert(0) += n;
        }
    }

    /// Removes one copy; returns false when `x` was absent.
    pub fn remove_one(&mut self, x: &T) -> bool {
        match self.counts.get_mut(x) {
            None => false,
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(x);
                }
                true
            }
        }
    }

    pub fn multiplicity(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.counts.contains_key(x)
    }

    pub fn support(&self) -> BTreeSet<T> {
        self.counts.keys().cloned().collect()
    }

    /// Number of elements counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Distinct elements with their counts, in element order.
    pub fn counts(&self) -> btree_map::Iter<'_, T, usize> {
        self.counts.iter()
    }

    /// Every copy of every element, in element order.
    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.counts.iter().flat_map(|(x, &n)| std::iter::repeat(x).take(n))
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.iter().cloned().collect()
    }

    pub fn pointwise(&self, other: &Self, op: Pointwise) -> Self {
        match op {
            Pointwise::Intersection => self.intersection(other),
            Pointwise::Union => self.union(other),
            Pointwise::Sum => self.sum(other),
            Pointwise::Difference => self.difference(other),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_counts(
            self.counts
                .iter()
                .map(|(x, &n)| (x.clone(), n.min(other.multiplicity(x)))),
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (x, &n) in &other.counts {
            let c = m.counts.entry(x.clone()).or_insert(0);
            *c = (*c).max(n);
        }
        m
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (x, &n) in &other.counts {
            m.insert_n(x.clone(), n);
        }
        m
    }

    /// Truncated difference: `max(0, M(a) - N(a))` per element.
    pub fn difference(&self, other: &Self) -> Self {
        Self::from_counts(
            self.counts
                .iter()
                .map(|(x, &n)| (x.clone(), n.saturating_sub(other.multiplicity(x)))),
        )
    }

    pub fn is_submultiset(&self, other: &Self) -> bool {
        self.counts.iter().all(|(x, &n)| n <= other.multiplicity(x))
    }

    /// All submultisets, in a fixed order starting with the empty one.
    pub fn submultisets(&self) -> Vec<Self> {
        let mut out = vec![Self::new()];
        for (x, &n) in &self.counts {
            let mut next = Vec::with_capacity(out.len() * (n + 1));
            for base in &out {
                for k in 0..=n {
                    let mut m = base.clone();
                    m.insert_n(x.clone(), k);
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    pub fn map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> FMultiset<U> {
        FMultiset::from_counts(self.counts.iter().map(|(x, &n)| (f(x), n)))
    }
}

impl<T: Ord + Clone> FromIterator<T> for FMultiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::from_counts(iter.into_iter().map(|x| (x, 1)))
    }
}

impl<T: Ord + Clone> Extend<T> for FMultiset<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

impl<T: Ord + fmt::Display> fmt::Display for FMultiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        for (x, &n) in &self.counts {
            for _ in 0..n {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for FMultiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ms(s: &str) -> FMultiset<char> {
        s.chars().collect()
    }

    #[test]
    fn pointwise_examples() {
        assert_eq!(ms("aab").sum(&ms("ac")), ms("aaabc"));
        assert_eq!(ms("aab").difference(&ms("abb")), ms("a"));
        assert_eq!(ms("aa").union(&ms("ab")), ms("aab"));
        assert_eq!(ms("aa").intersection(&ms("ab")), ms("a"));
    }

    #[test]
    fn order_and_support() {
        assert!(ms("").is_submultiset(&ms("xyz")));
        assert!(!ms("aa").is_submultiset(&ms("a")));
        assert!(ms("ab").is_submultiset(&ms("aabc")));
        assert_eq!(ms("aab").support(), ['a', 'b'].into_iter().collect());
        assert_eq!(ms("aab").multiplicity(&'a'), 2);
        assert_eq!(ms("aab").multiplicity(&'c'), 0);
    }

    #[test]
    fn zero_counts_are_dropped() {
        let m = FMultiset::from_counts([('a', 0), ('b', 2)]);
        assert_eq!(m, ms("bb"));
        assert_eq!(ms("ab").difference(&ms("ab")), FMultiset::new());
    }

    #[test]
    fn display_lists_copies() {
        let m: FMultiset<&str> = ["q", "p", "p"].into_iter().collect();
        assert_eq!(m.to_string(), "[p, p, q]");
        assert_eq!(FMultiset::<&str>::new().to_string(), "[]");
    }

    #[test]
    fn submultiset_enumeration_is_complete() {
        let m = ms("aab");
        let subs = m.submultisets();
        assert_eq!(subs.len(), 3 * 2);
        assert!(subs.iter().all(|s| s.is_submultiset(&m)));
    }

    fn arb() -> impl Strategy<Value = FMultiset<u8>> {
        prop::collection::vec(0u8..5, 0..8).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn sum_is_commutative_monoid(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
            prop_assert_eq!(a.sum(&FMultiset::new()), a.clone());
        }

        #[test]
        fn difference_cancels_sum(a in arb(), b in arb()) {
            prop_assert_eq!(a.sum(&b).difference(&b), a);
        }

        #[test]
        fn submultiset_iff_empty_difference(a in arb(), b in arb()) {
            prop_assert_eq!(a.is_submultiset(&b), a.difference(&b).is_empty());
        }

        #[test]
        fn support_of_sum(a in arb(), b in arb()) {
            let u: BTreeSet<u8> = a.support().union(&b.support()).copied().collect();
            prop_assert_eq!(a.sum(&b).support(), u);
        }

        #[test]
        fn lattice_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.union(&a), a.clone());
            prop_assert_eq!(a.intersection(&a), a.clone());
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.intersection(&b), b.intersection(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.intersection(&b).intersection(&c), a.intersection(&b.intersection(&c)));
        }

        #[test]
        fn submultiset_is_partial_order(a in arb(), b in arb(), c in arb()) {
            prop_assert!(a.is_submultiset(&a));
            if a.is_submultiset(&b) && b.is_submultiset(&a) {
                prop_assert_eq!(&a, &b);
            }
            if a.is_submultiset(&b) && b.is_submultiset(&c) {
                prop_assert!(a.is_submultiset(&c));
            }
        }
    }
}
