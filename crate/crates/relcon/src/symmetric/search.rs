//! Bounded backward search for relevant derivations.
//!
//! Works from Δ towards Γ: a step back through Ψ ▷ Ψ′ replaces a copy of Ψ′
//! in the current multiset by Ψ. Metavariables that occur only in Ψ range
//! over a pool built from the subformulas of Γ and Δ.

use std::collections::{BTreeSet, HashMap};

use super::{check_derivation, Derivation, DerivationVerdict};
use crate::oracle::{SymmetricOracle, Verdict};
use crate::syntax::{match_multiset, Assignment, AxiomaticSystem, Formula, Multiset, Name, Rule};
use crate::treeproof::grow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveBounds {
    /// Longest derivation, counted in multisets.
    pub max_steps: usize,
    pub max_formula_size: usize,
    /// Connective layers added to the subformula pool.
    pub max_layers: usize,
}

impl Default for DeriveBounds {
    fn default() -> Self {
        DeriveBounds { max_steps: 6, max_formula_size: 16, max_layers: 0 }
    }
}

/// A shortest relevant derivation of Δ from Γ within the bounds. `None` is
/// not a disproof.
pub fn derive_search(system: &AxiomaticSystem, premises: &Multiset, conclusions: &Multiset, bounds: DeriveBounds) -> Option<Derivation> {
    if bounds.max_steps == 0 {
        return None;
    }
    let mut pool: BTreeSet<Formula> = premises.iter().chain(conclusions.iter()).flat_map(|f| f.subformulas()).collect();
    let connectives = system.connectives();
    for _ in 0..bounds.max_layers {
        pool = grow(&pool, &connectives, bounds.max_formula_size);
    }
    let mut s = Backward {
        system,
        goal: premises,
        pool: pool.into_iter().collect(),
        max_size: bounds.max_formula_size,
        max_left: system.rules.iter().map(|r| r.premises.len()).max().unwrap_or(0),
        max_right: system.rules.iter().map(|r| r.conclusions.len()).max().unwrap_or(0),
        failed: HashMap::new(),
    };
    for depth in 0..bounds.max_steps {
        let mut trail = vec![];
        if s.dfs(conclusions, depth, &mut trail) {
            let mut d = Derivation::single(premises.clone());
            for (m, rule) in trail.into_iter().rev() {
                d.push(m, &rule);
            }
            debug_assert_eq!(check_derivation(&d, system, premises, conclusions).verdict, DerivationVerdict::Relevant);
            return Some(d);
        }
    }
    None
}

struct Backward<'a> {
    system: &'a AxiomaticSystem,
    goal: &'a Multiset,
    pool: Vec<Formula>,
    max_size: usize,
    max_left: usize,
    max_right: usize,
    /// Multisets from which Γ is unreachable in this many backward steps.
    failed: HashMap<Multiset, usize>,
}

impl Backward<'_> {
    /// Each step back removes at most `max_right` formulas outside Γ and
    /// adds at most `max_left` formulas of Γ.
    fn lower_bound(&self, cur: &Multiset) -> usize {
        let excess = cur.difference(self.goal).len();
        let deficit = self.goal.difference(cur).len();
        let steps = |n: usize, per: usize| match (n, per) {
            (0, _) => 0,
            (_, 0) => usize::MAX,
            (n, per) => n.div_ceil(per),
        };
        steps(excess, self.max_right).max(steps(deficit, self.max_left))
    }

    /// `trail` collects (multiset after the step, rule) from Δ backwards.
    fn dfs(&mut self, cur: &Multiset, depth: usize, trail: &mut Vec<(Multiset, Name)>) -> bool {
        if cur == self.goal {
            return true;
        }
        if self.lower_bound(cur) > depth || self.failed.get(cur).is_some_and(|&d| d >= depth) {
            return false;
        }
        for rule in self.system.rules.clone() {
            for prev in self.predecessors(&rule, cur) {
                trail.push((cur.clone(), rule.name.clone()));
                if self.dfs(&prev, depth - 1, trail) {
                    return true;
                }
                trail.pop();
            }
        }
        let e = self.failed.entry(cur.clone()).or_insert(0);
        *e = (*e).max(depth);
        false
    }

    fn predecessors(&self, rule: &Rule, cur: &Multiset) -> Vec<Multiset> {
        let mut out = vec![];
        let m = rule.conclusions.len();
        for part in cur.submultisets().into_iter().filter(|p| p.len() == m) {
            let rest = cur.difference(&part);
            let mut sigmas = vec![];
            match_multiset(&rule.conclusions, &part.to_vec(), &Assignment::new(), &mut |s| {
                sigmas.push(s.clone());
                false
            });
            for sigma in sigmas {
                let unbound: Vec<Name> = rule.metas().into_iter().filter(|v| !sigma.contains_key(v)).collect();
                for full in self.instantiations(sigma, &unbound) {
                    let psi: Option<Vec<Formula>> = rule.premises.iter().map(|p| p.substitute(&full).ok()).collect();
                    let psi = psi.expect("all metavariables bound");
                    if psi.iter().all(|f| f.size() <= self.max_size) {
                        let prev = rest.sum(&psi.into_iter().collect());
                        if !out.contains(&prev) {
                            out.push(prev);
                        }
                    }
                }
            }
        }
        out
    }

    fn instantiations(&self, sigma: Assignment, unbound: &[Name]) -> Vec<Assignment> {
        let mut out = vec![sigma];
        for v in unbound {
            out = out
                .into_iter()
                .flat_map(|s| {
                    self.pool.iter().map(move |f| {
                        let mut s = s.clone();
                        s.insert(v.clone(), f.clone());
                        s
                    })
                })
                .collect();
        }
        out
    }
}

/// Derivability within bounds as a symmetric oracle: holds or unknown.
pub struct DerivabilityOracle {
    pub system: AxiomaticSystem,
    pub bounds: DeriveBounds,
}

impl SymmetricOracle for DerivabilityOracle {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        match derive_search(&self.system, premises, conclusions, self.bounds) {
            Some(_) => Verdict::Holds,
            None => Verdict::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::tests::{bci, ms};

    #[test]
    fn modus_ponens_in_two_steps() {
        let d = derive_search(&bci(), &ms("[a -> b, a]"), &ms("[b]"), DeriveBounds::default()).unwrap();
        assert_eq!(d.steps.len(), 2);
    }

    #[test]
    fn axiom_in_context() {
        let d = derive_search(&bci(), &ms("[a]"), &ms("[a -> a, a]"), DeriveBounds::default()).unwrap();
        assert_eq!(d.steps, vec![ms("[a]"), ms("[a, a -> a]")]);
        assert_eq!(&*d.rules[0].name, "I");
    }

    #[test]
    fn reflexivity_without_rules() {
        let toy = AxiomaticSystem::parse("system toy\natoms x y z\n").unwrap();
        let d = derive_search(&toy, &ms("[x, y]"), &ms("[y, x]"), DeriveBounds::default()).unwrap();
        assert_eq!(d.steps.len(), 1);
    }

    #[test]
    fn five_premises() {
        let g = ms("[a -> b, a -> c, a, a, a]");
        let d = derive_search(&bci(), &g, &ms("[a, b, c]"), DeriveBounds::default()).unwrap();
        assert_eq!(d.steps.len(), 3);
        assert!(derive_search(&bci(), &ms("[a -> b, a -> c, a, a]"), &ms("[a, b, c]"), DeriveBounds::default()).is_none());
    }

    #[test]
    fn cut_formula_from_pool() {
        // b is needed as an intermediate that only appears as a subformula
        let g = ms("[a -> b, b -> c, a]");
        let d = derive_search(&bci(), &g, &ms("[c]"), DeriveBounds::default()).unwrap();
        assert_eq!(d.steps.len(), 3);
    }
}
