//! Bounded backward search for relevant tree proofs.
//!
//! A relevant tree for (S, g) either is a leaf (premise g with S = [g], or an
//! axiom instance with S = []) or applies a rule whose children split S into
//! parts, each proved relevantly. Unbound premise metavariables range over a
//! candidate pool grown layer by layer from the subformulas of the query.

use std::collections::{BTreeSet, HashMap};

use super::ProofTree;
use crate::oracle::{ConsequenceOracle, Verdict};
use crate::syntax::{Assignment, AxiomaticSystem, Connective, Formula, Multiset, Name, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest tree, counted in nodes.
    pub max_nodes: usize,
    /// Largest formula, counted in symbols, anywhere in the tree.
    pub max_formula_size: usize,
    /// How many connective layers to add to the subformula pool.
    pub max_layers: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_nodes: 9, max_formula_size: 16, max_layers: 1 }
    }
}

/// Returns a smallest relevant proof within the bounds, preferring lower pool
/// layers. `None` is not a disproof.
pub fn search(
    system: &AxiomaticSystem,
    premises: &Multiset,
    goal: &Formula,
    bounds: SearchBounds,
) -> Option<ProofTree> {
    if system.symmetric || goal.size() > bounds.max_formula_size {
        return None;
    }
    let mut pool: BTreeSet<Formula> = premises.iter().chain([goal]).flat_map(|f| f.subformulas()).collect();
    let connectives = system.connectives();
    for layer in 0..=bounds.max_layers {
        if layer > 0 {
            let grown = grow(&pool, &connectives, bounds.max_formula_size);
            if grown.len() == pool.len() {
                break;
            }
            pool = grown;
        }
        let mut s = Searcher::new(system, pool.iter().cloned().collect(), bounds.max_formula_size);
        if let Some(t) = s.solve_min(goal, premises, bounds.max_nodes) {
            return Some(t);
        }
    }
    None
}

pub(crate) fn grow(pool: &BTreeSet<Formula>, connectives: &BTreeSet<Connective>, max_size: usize) -> BTreeSet<Formula> {
    let mut out = pool.clone();
    for &c in connectives {
        match c.arity() {
            0 => {
                out.insert(Formula::build(c, &[]));
            }
            1 => out.extend(pool.iter().map(|a| Formula::build(c, &[a.clone()]))),
            _ => {
                for a in pool {
                    for b in pool {
                        if a.size() + b.size() < max_size {
                            out.insert(Formula::build(c, &[a.clone(), b.clone()]));
                        }
                    }
                }
            }
        }
    }
    out.retain(|f| f.size() <= max_size);
    out
}

#[derive(Default)]
struct Entry {
    best: Option<ProofTree>,
    /// No tree of at most this many nodes exists.
    none_upto: usize,
}

struct Searcher<'a> {
    system: &'a AxiomaticSystem,
    rules: Vec<&'a Rule>,
    pool: Vec<Formula>,
    max_size: usize,
    memo: HashMap<(Formula, Multiset), Entry>,
}

impl<'a> Searcher<'a> {
    fn new(system: &'a AxiomaticSystem, pool: Vec<Formula>, max_size: usize) -> Self {
        let rules = system.proper_rules().filter(|r| r.conclusion().is_some()).collect();
        Searcher { system, rules, pool, max_size, memo: HashMap::new() }
    }

    /// A smallest tree for (s, g) with at most `budget` nodes.
    fn solve_min(&mut self, g: &Formula, s: &Multiset, budget: usize) -> Option<ProofTree> {
        let key = (g.clone(), s.clone());
        loop {
            let entry = self.memo.entry(key.clone()).or_default();
            if let Some(t) = &entry.best {
                return (t.size() <= budget).then(|| t.clone());
            }
            if entry.none_upto >= budget {
                return None;
            }
            let c = entry.none_upto + 1;
            let found = self.any(g, s, c);
            let entry = self.memo.get_mut(&key).expect("entry inserted above");
            match found {
                Some(t) => {
                    entry.best = Some(t.clone());
                    return Some(t);
                }
                None => entry.none_upto = entry.none_upto.max(c),
            }
        }
    }

    /// Some tree for (s, g) with at most `c` nodes, assuming none with fewer.
    fn any(&mut self, g: &Formula, s: &Multiset, c: usize) -> Option<ProofTree> {
        if s.len() == 1 && s.contains(g) {
            return Some(ProofTree::premise(g.clone()));
        }
        if s.is_empty() {
            if let Some((r, _)) = self.system.axiom_for(g) {
                return Some(ProofTree::axiom(g.clone(), &r.name));
            }
        }
        for rule in self.rules.clone() {
            let k = rule.premises.len();
            if 1 + k.max(s.len()) > c {
                continue;
            }
            let Some(sigma0) = rule.conclusion().and_then(|concl| concl.matches(g)) else {
                continue;
            };
            let unbound: Vec<Name> =
                rule.metas().into_iter().filter(|m| !sigma0.contains_key(m)).collect();
            for sigma in self.instantiations(&sigma0, &unbound) {
                let goals: Option<Vec<Formula>> =
                    rule.premises.iter().map(|p| p.substitute(&sigma).ok()).collect();
                let goals = goals.expect("all metavariables bound");
                if goals.iter().any(|f| f.size() > self.max_size) {
                    continue;
                }
                let mut children = Vec::with_capacity(k);
                if self.split(&goals, s, c - 1, &mut children) {
                    return Some(ProofTree::rule(g.clone(), &rule.name, children));
                }
            }
        }
        None
    }

    fn instantiations(&self, sigma0: &Assignment, unbound: &[Name]) -> Vec<Assignment> {
        let mut out = vec![sigma0.clone()];
        for m in unbound {
            out = out
                .into_iter()
                .flat_map(|s| {
                    self.pool.iter().map(move |f| {
                        let mut s = s.clone();
                        s.insert(m.clone(), f.clone());
                        s
                    })
                })
                .collect();
        }
        out
    }

    /// Distributes `s` over `goals` (in order) and proves each part within
    /// `budget` nodes in total.
    fn split(&mut self, goals: &[Formula], s: &Multiset, budget: usize, out: &mut Vec<ProofTree>) -> bool {
        let Some((g, rest_goals)) = goals.split_first() else {
            return s.is_empty();
        };
        let later = rest_goals.len();
        let parts = if later == 0 { vec![s.clone()] } else { s.submultisets() };
        for part in parts {
            let rest = s.difference(&part);
            // each later child needs a node, and a leaf per remaining resource
            let reserve = if later == 0 { 0 } else { later.max(rest.len()) };
            if part.len().max(1) + reserve > budget {
                continue;
            }
            if let Some(t) = self.solve_min(g, &part, budget - reserve) {
                let used = t.size();
                out.push(t);
                if self.split(rest_goals, &rest, budget - used, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
}

/// ⊢ʳ_AS as an oracle: holds when search finds a proof, unknown otherwise.
pub struct ProvabilityOracle {
    pub system: AxiomaticSystem,
    pub bounds: SearchBounds,
}

impl ConsequenceOracle for ProvabilityOracle {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        match search(&self.system, premises, conclusion, self.bounds) {
            Some(_) => Verdict::Holds,
            None => Verdict::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_multiset};
    use crate::treeproof::{verify, RelevanceVerdict, Justification};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn bci() -> AxiomaticSystem {
        AxiomaticSystem::parse(crate::treeproof::tests::BCI).unwrap()
    }

    #[test]
    fn modus_ponens() {
        let g = parse_multiset("[p -> q, p]").unwrap();
        let t = search(&bci(), &g, &f("q"), SearchBounds::default()).unwrap();
        assert_eq!(t.size(), 3);
        assert!(verify(&t, &bci(), &g, &f("q")) >= RelevanceVerdict::Relevant);
    }

    #[test]
    fn identity_axiom() {
        let t = search(&bci(), &Multiset::new(), &f("p -> p"), SearchBounds::default()).unwrap();
        assert_eq!(t.size(), 1);
        assert!(matches!(t.by, Justification::Axiom { ref name, .. } if &**name == "I"));
    }

    #[test]
    fn unused_premise_is_not_provable() {
        let g = parse_multiset("[p -> q, p, r]").unwrap();
        assert!(search(&bci(), &g, &f("q"), SearchBounds::default()).is_none());
    }

    #[test]
    fn double_detachment() {
        let g = parse_multiset("[p -> (p -> q), p]").unwrap();
        let t = search(&bci(), &g, &f("p -> q"), SearchBounds::default()).unwrap();
        assert_eq!(verify(&t, &bci(), &g, &f("p -> q")), RelevanceVerdict::StronglyRelevant);
    }

    #[test]
    fn pool_growth_respects_size() {
        let base: BTreeSet<Formula> = [f("p")].into_iter().collect();
        let cs = [Connective::Imp].into_iter().collect();
        let grown = grow(&base, &cs, 3);
        assert_eq!(grown, [f("p"), f("p -> p")].into_iter().collect());
    }
}
