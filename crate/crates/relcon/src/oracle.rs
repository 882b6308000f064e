//! Three-valued consequence oracles.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::syntax::{Formula, Multiset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn fails(self) -> bool {
        self == Verdict::Fails
    }

    /// Kleene conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::Unknown,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Holds, _) | (_, Verdict::Holds) => Verdict::Holds,
            (Verdict::Fails, Verdict::Fails) => Verdict::Fails,
            _ => Verdict::Unknown,
        }
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::Holds => Verdict::Fails,
            Verdict::Fails => Verdict::Holds,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    /// Conjunction over an iterator, stopping at the first failure.
    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::Holds;
        for v in items {
            acc = acc.and(v);
            if acc.fails() {
                break;
            }
        }
        acc
    }

    /// Disjunction over an iterator, stopping at the first success.
    pub fn any(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::Fails;
        for v in items {
            acc = acc.or(v);
            if acc.holds() {
                break;
            }
        }
        acc
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A relation between finite multisets of premises and single conclusions.
pub trait ConsequenceOracle {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict;

    /// A finite, exact set of theorems, when the oracle knows one.
    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        None
    }

    /// Decides whether the premises entail every theorem.
    fn entails_every_theorem(&self, premises: &Multiset) -> Verdict {
        match self.theorem_basis() {
            Some(basis) => Verdict::all(basis.iter().map(|t| self.entails(premises, t))),
            None => Verdict::Unknown,
        }
    }
}

/// A relation between finite multisets of premises and of conclusions.
pub trait SymmetricOracle {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict;
}

macro_rules! forward_oracles {
    ($($ptr:ident)::+) => {
        impl<T: ConsequenceOracle + ?Sized> ConsequenceOracle for $($ptr)::+<T> {
            fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
                (**self).entails(premises, conclusion)
            }
            fn theorem_basis(&self) -> Option<Vec<Formula>> {
                (**self).theorem_basis()
            }
            fn entails_every_theorem(&self, premises: &Multiset) -> Verdict {
                (**self).entails_every_theorem(premises)
            }
        }

        impl<T: SymmetricOracle + ?Sized> SymmetricOracle for $($ptr)::+<T> {
            fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
                (**self).entails_sym(premises, conclusions)
            }
        }
    };
}

forward_oracles!(Box);
forward_oracles!(std::rc::Rc);
forward_oracles!(std::sync::Arc);

impl<T: ConsequenceOracle + ?Sized> ConsequenceOracle for &T {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        (**self).entails(premises, conclusion)
    }
    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        (**self).theorem_basis()
    }
    fn entails_every_theorem(&self, premises: &Multiset) -> Verdict {
        (**self).entails_every_theorem(premises)
    }
}

impl<T: SymmetricOracle + ?Sized> SymmetricOracle for &T {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        (**self).entails_sym(premises, conclusions)
    }
}

type Table<K> = RefCell<HashMap<Multiset, HashMap<K, Verdict>>>;

/// Memoises an oracle. Answers are deterministic, so caching is transparent.
pub struct Cached<O> {
    inner: O,
    single: Table<Formula>,
    multi: Table<Multiset>,
    theorems: RefCell<HashMap<Multiset, Verdict>>,
}

impl<O> Cached<O> {
    pub fn new(inner: O) -> Self {
        Cached {
            inner,
            single: RefCell::default(),
            multi: RefCell::default(),
            theorems: RefCell::default(),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

fn lookup<K: std::hash::Hash + Eq + Clone>(
    table: &Table<K>,
    left: &Multiset,
    right: &K,
    compute: impl FnOnce() -> Verdict,
) -> Verdict {
    if let Some(&v) = table.borrow().get(left).and_then(|m| m.get(right)) {
        return v;
    }
    let v = compute();
    table.borrow_mut().entry(left.clone()).or_default().insert(right.clone(), v);
    v
}

impl<O: ConsequenceOracle> ConsequenceOracle for Cached<O> {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        lookup(&self.single, premises, conclusion, || self.inner.entails(premises, conclusion))
    }

    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        self.inner.theorem_basis()
    }

    fn entails_every_theorem(&self, premises: &Multiset) -> Verdict {
        if let Some(&v) = self.theorems.borrow().get(premises) {
            return v;
        }
        let v = self.inner.entails_every_theorem(premises);
        self.theorems.borrow_mut().insert(premises.clone(), v);
        v
    }
}

impl<O: SymmetricOracle> SymmetricOracle for Cached<O> {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        lookup(&self.multi, premises, conclusions, || self.inner.entails_sym(premises, conclusions))
    }
}

#[cfg(test)]
mod tests {
    use super::Verdict::*;
    use super::*;

    #[test]
    fn kleene_tables() {
        assert_eq!(Holds.and(Unknown), Unknown);
        assert_eq!(Fails.and(Unknown), Fails);
        assert_eq!(Holds.or(Unknown), Holds);
        assert_eq!(Fails.or(Unknown), Unknown);
        assert_eq!(Verdict::all([]), Holds);
        assert_eq!(Verdict::any([]), Fails);
        assert_eq!(Verdict::any([Unknown, Fails]), Unknown);
    }
}
