//! Passing between single-conclusion and symmetric oracles.

use crate::oracle::{ConsequenceOracle, SymmetricOracle, Verdict};
use crate::syntax::{Formula, Multiset};

/// Ordered partitions beyond this count are not enumerated.
pub const DEFAULT_PARTITION_CAP: u64 = 1_000_000;

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

/// Ordered partitions of `m` into `parts` pieces: each element's count is
/// spread over the pieces independently.
fn partition_count(m: &Multiset, parts: usize) -> Option<u64> {
    if parts == 0 {
        return Some(u64::from(m.is_empty()));
    }
    m.counts().try_fold(1u64, |acc, (_, &c)| {
        acc.checked_mul(binomial((c + parts - 1) as u64, (parts - 1) as u64)?)
    })
}

/// Γ ⊢ˢ [χ₁, …, χₙ] iff Γ splits as Γ₁ ⊎ … ⊎ Γₙ with Γᵢ ⊢ χᵢ; Γ ⊢ˢ [] iff Γ
/// entails every theorem.
pub fn symmetrize<O: ConsequenceOracle + ?Sized>(oracle: &O, premises: &Multiset, conclusions: &Multiset, cap: u64) -> Verdict {
    if conclusions.is_empty() {
        return oracle.entails_every_theorem(premises);
    }
    if partition_count(premises, conclusions.len()).map_or(true, |n| n > cap) {
        return Verdict::Unknown;
    }
    let goals = conclusions.to_vec();
    assign(oracle, &goals, premises)
}

fn assign<O: ConsequenceOracle + ?Sized>(oracle: &O, goals: &[Formula], rest: &Multiset) -> Verdict {
    let (goal, later) = goals.split_first().expect("at least one conclusion");
    if later.is_empty() {
        return oracle.entails(rest, goal);
    }
    Verdict::any(rest.submultisets().into_iter().map(|part| {
        match oracle.entails(&part, goal) {
            Verdict::Fails => Verdict::Fails,
            v => v.and(assign(oracle, later, &rest.difference(&part))),
        }
    }))
}

/// Γ ⊢ᵃ φ iff Γ ⊢ [φ].
pub fn asymmetric<S: SymmetricOracle + ?Sized>(oracle: &S, premises: &Multiset, conclusion: &Formula) -> Verdict {
    oracle.entails_sym(premises, &Multiset::singleton(conclusion.clone()))
}

/// Γ ⊢ Δ iff Γ ⊢ χ for each χ in the support of Δ; the set reading.
pub fn tarskian<O: ConsequenceOracle + ?Sized>(oracle: &O, premises: &Multiset, conclusions: &Multiset) -> Verdict {
    Verdict::all(conclusions.support().iter().map(|c| oracle.entails(premises, c)))
}

/// The symmetrization of a single-conclusion oracle.
pub struct Symmetrization<O> {
    pub inner: O,
    pub cap: u64,
}

impl<O> Symmetrization<O> {
    pub fn new(inner: O) -> Self {
        Symmetrization { inner, cap: DEFAULT_PARTITION_CAP }
    }
}

impl<O: ConsequenceOracle> SymmetricOracle for Symmetrization<O> {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        symmetrize(&self.inner, premises, conclusions, self.cap)
    }
}

/// The asymmetric part of a symmetric oracle. `basis`, when given, is a
/// finite set of theorems such that entailing all of them means entailing
/// every theorem; an empty basis declares that there are no theorems.
pub struct Asymmetric<S> {
    pub inner: S,
    pub basis: Option<Vec<Formula>>,
}

impl<S> Asymmetric<S> {
    pub fn new(inner: S, basis: Option<Vec<Formula>>) -> Self {
        Asymmetric { inner, basis }
    }
}

impl<S: SymmetricOracle> ConsequenceOracle for Asymmetric<S> {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        asymmetric(&self.inner, premises, conclusion)
    }

    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        self.basis.clone()
    }
}

/// The set-reading symmetrization, for monotone and contractive oracles.
pub struct Tarskian<O> {
    pub inner: O,
}

impl<O: ConsequenceOracle> SymmetricOracle for Tarskian<O> {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        tarskian(&self.inner, premises, conclusions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{AbelianKind, AbelianOracle, AbelianSymmetric, CountingRelation};
    use crate::syntax::{atom, numeral, parse_multiset};

    fn ms(s: &str) -> Multiset {
        parse_multiset(s).unwrap()
    }

    fn xs(n: usize) -> Multiset {
        Multiset::from_counts([(atom("x"), n)])
    }

    #[test]
    fn counting_relation_strictness() {
        let a = Asymmetric::new(CountingRelation::default(), Some(vec![]));
        assert!(a.entails(&xs(1), &atom("x")).holds());
        assert!(a.entails(&xs(2), &atom("x")).fails());
        assert!(symmetrize(&a, &xs(3), &xs(2), DEFAULT_PARTITION_CAP).fails());
        assert!(CountingRelation::default().entails_sym(&xs(3), &xs(2)).holds());
    }

    #[test]
    fn sum_relation_strictness() {
        let z = AbelianOracle::new(AbelianKind::Z);
        let d = ms("[1, -1]");
        assert!(symmetrize(&z, &Multiset::new(), &d, DEFAULT_PARTITION_CAP).fails());
        assert!(AbelianSymmetric::default().entails_sym(&Multiset::new(), &d).holds());
    }

    #[test]
    fn singleton_split_holds_for_reflexive_oracles() {
        let z = AbelianOracle::new(AbelianKind::Z);
        let g = ms("[1, 2, a, a]");
        assert!(symmetrize(&z, &g, &g, DEFAULT_PARTITION_CAP).holds());
    }

    #[test]
    fn empty_conclusions_use_the_theorem_hook() {
        let z = AbelianOracle::new(AbelianKind::Z);
        assert!(symmetrize(&z, &ms("[-1]"), &Multiset::new(), DEFAULT_PARTITION_CAP).holds());
        assert!(symmetrize(&z, &ms("[1]"), &Multiset::new(), DEFAULT_PARTITION_CAP).fails());
        let unknown_theorems = Asymmetric::new(CountingRelation::default(), None);
        assert_eq!(symmetrize(&unknown_theorems, &xs(1), &Multiset::new(), DEFAULT_PARTITION_CAP), Verdict::Unknown);
    }

    #[test]
    fn cap_gives_unknown() {
        let z = AbelianOracle::new(AbelianKind::Z);
        let g: Multiset = (0..6).map(numeral).collect();
        let d: Multiset = (0..4).map(numeral).collect();
        assert_eq!(partition_count(&g, 4), Some(4096));
        assert_eq!(symmetrize(&z, &g, &d, 100), Verdict::Unknown);
        assert_ne!(symmetrize(&z, &g, &d, 10_000), Verdict::Unknown);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partition_count(&ms("[a, a]"), 2), Some(3));
        assert_eq!(partition_count(&ms("[a, b]"), 2), Some(4));
        assert_eq!(partition_count(&Multiset::new(), 0), Some(1));
        assert_eq!(partition_count(&ms("[a]"), 0), Some(0));
    }
}
