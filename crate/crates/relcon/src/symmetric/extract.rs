//! Splitting a relevant derivation into a tree proof of one conclusion and a
//! residual derivation of the others.
//!
//! Every formula occurrence is a node. A step consumes the occurrences of its
//! premises (earliest first) and creates one occurrence of its conclusion
//! with rule edges to them; untouched occurrences carry over unchanged, which
//! collapses the edges between copies of the same occurrence.

use std::collections::BTreeSet;

use super::{check_derivation, Derivation, DerivationError, DerivationVerdict, StepRule};
use crate::syntax::{AxiomaticSystem, Formula, Multiset};
use crate::treeproof::{Justification, ProofTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub gamma_phi: Multiset,
    pub tree: ProofTree,
    pub gamma_rest: Multiset,
    pub residual: Derivation,
}

struct Node {
    formula: Formula,
    by: Justification,
    children: Vec<usize>,
}

pub fn extract_tree(
    d: &Derivation,
    system: &AxiomaticSystem,
    premises: &Multiset,
    conclusions: &Multiset,
    phi: &Formula,
) -> Result<Extraction, DerivationError> {
    let check = check_derivation(d, system, premises, conclusions);
    if check.verdict != DerivationVerdict::Relevant {
        return Err(DerivationError::NotRelevant(check.problem.unwrap_or_default()));
    }
    if !conclusions.contains(phi) {
        return Err(DerivationError::NotConcluded(phi.clone()));
    }
    let mut nodes: Vec<Node> = premises
        .iter()
        .map(|f| Node { formula: f.clone(), by: Justification::Premise, children: vec![] })
        .collect();
    let mut alive: Vec<usize> = (0..nodes.len()).collect();
    // per step: the consumed occurrences and the created one
    let mut moves: Vec<(Vec<usize>, usize)> = Vec::with_capacity(check.instances.len());
    for inst in &check.instances {
        let rule = system.rule(&inst.rule).expect("checked rule exists");
        let [conclusion] = inst.conclusions.as_slice() else {
            return Err(DerivationError::NotSingleConclusion(inst.rule.clone()));
        };
        let mut consumed = Vec::with_capacity(inst.premises.len());
        for p in &inst.premises {
            let pos = alive.iter().position(|&n| &nodes[n].formula == p).expect("checked step is in context");
            consumed.push(alive.remove(pos));
        }
        let by = if rule.is_axiom() {
            Justification::Axiom { name: rule.name.clone(), subst: None }
        } else {
            Justification::Rule { name: rule.name.clone(), subst: None }
        };
        nodes.push(Node { formula: conclusion.clone(), by, children: consumed.clone() });
        alive.push(nodes.len() - 1);
        moves.push((consumed, nodes.len() - 1));
    }
    let root = *alive.iter().find(|&&n| &nodes[n].formula == phi).expect("relevant derivation ends at Δ");
    let mut in_tree = BTreeSet::new();
    let tree = build(&nodes, root, &mut in_tree);

    let gamma_phi: Multiset = (0..premises.len()).filter(|n| in_tree.contains(n)).map(|n| nodes[n].formula.clone()).collect();
    let gamma_rest = premises.difference(&gamma_phi);
    let mut residual = Derivation::single(gamma_rest.clone());
    let mut current = gamma_rest.clone();
    for ((consumed, created), step) in moves.iter().zip(&d.rules) {
        if in_tree.contains(created) {
            continue;
        }
        for &c in consumed {
            current.remove_one(&nodes[c].formula);
        }
        current.insert(nodes[*created].formula.clone());
        residual.steps.push(current.clone());
        residual.rules.push(StepRule { name: step.name.clone(), subst: step.subst.clone() });
    }
    Ok(Extraction { gamma_phi, tree, gamma_rest, residual })
}

fn build(nodes: &[Node], n: usize, seen: &mut BTreeSet<usize>) -> ProofTree {
    seen.insert(n);
    let node = &nodes[n];
    ProofTree {
        formula: node.formula.clone(),
        by: node.by.clone(),
        children: node.children.iter().map(|&c| build(nodes, c, seen)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::tests::{bci, five_premise, ms};
    use crate::syntax::atom;
    use crate::treeproof::{verify, RelevanceVerdict};

    #[test]
    fn five_premise_split() {
        let g = ms("[a -> b, a -> c, a, a, a]");
        let delta = ms("[a, b, c]");
        let e = extract_tree(&five_premise(), &bci(), &g, &delta, &atom("b")).unwrap();
        assert_eq!(e.gamma_phi, ms("[a -> b, a]"));
        assert_eq!(e.gamma_rest, ms("[a -> c, a, a]"));
        assert_eq!(e.tree.size(), 3);
        assert!(verify(&e.tree, &bci(), &e.gamma_phi, &atom("b")) >= RelevanceVerdict::Relevant);
        let c = check_derivation(&e.residual, &bci(), &e.gamma_rest, &ms("[a, c]"));
        assert_eq!(c.verdict, DerivationVerdict::Relevant);
        assert_eq!(e.residual.steps.len(), 2);
    }

    #[test]
    fn trivial_derivation() {
        let toy = AxiomaticSystem::parse("system toy\natoms x\n").unwrap();
        let d = Derivation::single(ms("[x]"));
        let e = extract_tree(&d, &toy, &ms("[x]"), &ms("[x]"), &atom("x")).unwrap();
        assert_eq!(e.gamma_phi, ms("[x]"));
        assert_eq!(e.tree, ProofTree::premise(atom("x")));
        assert!(e.gamma_rest.is_empty());
        assert_eq!(e.residual, Derivation::single(Multiset::new()));
    }

    #[test]
    fn axiom_step_goes_to_the_tree() {
        let mut d = Derivation::single(ms("[a]"));
        d.push(ms("[a, a -> a]"), "I");
        let phi = crate::syntax::parse_formula("a -> a").unwrap();
        let e = extract_tree(&d, &bci(), &ms("[a]"), &ms("[a, a -> a]"), &phi).unwrap();
        assert!(e.gamma_phi.is_empty());
        assert!(matches!(e.tree.by, Justification::Axiom { .. }));
        assert_eq!(e.residual, Derivation::single(ms("[a]")));
    }

    #[test]
    fn preconditions() {
        let g = ms("[a -> b, a -> c, a, a, a]");
        let err = extract_tree(&five_premise(), &bci(), &g, &ms("[a, b, c]"), &atom("z")).unwrap_err();
        assert!(matches!(err, DerivationError::NotConcluded(_)));
        let err = extract_tree(&five_premise(), &bci(), &g, &ms("[b, c]"), &atom("b")).unwrap_err();
        assert!(matches!(err, DerivationError::NotRelevant(_)));
    }
}
