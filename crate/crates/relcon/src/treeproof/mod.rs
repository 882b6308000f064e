//! Tree proofs: checking against the relevance conditions, composition,
//! bounded search, and the deduction transformation.

mod deduction;
mod io;
mod ops;
mod search;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Assignment, AxiomaticSystem, Formula, Multiset, Name, ParseError};

pub use deduction::{deduction_transform, BciShapes};
pub use ops::{cut_compose, pump_use};
pub use search::{search, ProvabilityOracle, SearchBounds};
pub(crate) use search::grow;
pub(crate) use io::{justification as io_justification, justification_value as io_justification_value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Axiom { name: Name, subst: Option<Assignment> },
    Rule { name: Name, subst: Option<Assignment> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub formula: Formula,
    pub by: Justification,
    pub children: Vec<ProofTree>,
}

/// Ordered from weakest to strongest; `verify` reports the strongest class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelevanceVerdict {
    Invalid,
    Plain,
    WeaklyRelevant,
    Relevant,
    StronglyRelevant,
}

impl fmt::Display for RelevanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelevanceVerdict::Invalid => "invalid",
            RelevanceVerdict::Plain => "plain",
            RelevanceVerdict::WeaklyRelevant => "weakly_relevant",
            RelevanceVerdict::Relevant => "relevant",
            RelevanceVerdict::StronglyRelevant => "strongly_relevant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("malformed proof file: {0}")]
    Format(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no premise leaf labeled `{0}`")]
    NoLeaf(Formula),
    #[error("root of the inserted tree is `{found}`, expected `{expected}`")]
    RootMismatch { expected: Formula, found: Formula },
    #[error("required rule absent: {0}")]
    RequiredRulesAbsent(String),
    #[error("input proof is not relevant (verdict {0})")]
    NotRelevant(RelevanceVerdict),
    #[error("system not supported: {0}")]
    UnsupportedSystem(String),
}

impl ProofTree {
    pub fn premise(formula: Formula) -> Self {
        ProofTree { formula, by: Justification::Premise, children: vec![] }
    }

    pub fn axiom(formula: Formula, name: &str) -> Self {
        ProofTree { formula, by: Justification::Axiom { name: name.into(), subst: None }, children: vec![] }
    }

    pub fn rule(formula: Formula, name: &str, children: Vec<ProofTree>) -> Self {
        ProofTree { formula, by: Justification::Rule { name: name.into(), subst: None }, children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    /// Λ_T: leaf labels counted with multiplicity.
    pub fn leaf_multiset(&self) -> Multiset {
        let mut out = Multiset::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Multiset) {
        if self.is_leaf() {
            out.insert(self.formula.clone());
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    /// Leaves in depth-first, left-to-right order.
    pub fn leaves(&self) -> Vec<&ProofTree> {
        let mut out = vec![];
        self.visit(&mut |t| {
            if t.is_leaf() {
                out.push(t);
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a ProofTree)) {
        f(self);
        for c in &self.children {
            c.visit(f);
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProofError> {
        io::from_json(text)
    }

    pub fn to_json(&self) -> String {
        io::to_json(self)
    }
}

/// The outcome of `verify` with the multisets behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub verdict: RelevanceVerdict,
    /// Λ_T.
    pub leaves: Multiset,
    /// Λ_T ∸ Γ.
    pub excess: Multiset,
    /// Γ ∸ Λ_T.
    pub unused: Multiset,
    /// Why the tree is invalid, when it is.
    pub problem: Option<String>,
}

pub fn verify(t: &ProofTree, system: &AxiomaticSystem, premises: &Multiset, goal: &Formula) -> RelevanceVerdict {
    verify_report(t, system, premises, goal).verdict
}

pub fn verify_report(
    t: &ProofTree,
    system: &AxiomaticSystem,
    premises: &Multiset,
    goal: &Formula,
) -> Verification {
    let leaves = t.leaf_multiset();
    let excess = leaves.difference(premises);
    let unused = premises.difference(&leaves);
    let problem = structural_problem(t, system, premises, goal).or_else(|| {
        // condition 4: non-axioms label at most Γ(χ) leaves
        excess
            .counts()
            .map(|(f, _)| f)
            .find(|f| !system.is_axiom(f))
            .map(|f| format!("`{f}` labels more leaves than its {} premise copies", premises.multiplicity(f)))
    });
    let verdict = if problem.is_some() {
        RelevanceVerdict::Invalid
    } else if unused.is_empty() {
        if excess.is_empty() {
            RelevanceVerdict::StronglyRelevant
        } else {
            RelevanceVerdict::Relevant
        }
    } else if unused.counts().all(|(f, _)| system.is_axiom(f)) {
        RelevanceVerdict::WeaklyRelevant
    } else {
        RelevanceVerdict::Plain
    };
    Verification { verdict, leaves, excess, unused, problem }
}

fn structural_problem(
    t: &ProofTree,
    system: &AxiomaticSystem,
    premises: &Multiset,
    goal: &Formula,
) -> Option<String> {
    if system.symmetric {
        return Some(format!("system {} is not single-conclusion", system.name));
    }
    if &t.formula != goal {
        return Some(format!("root `{}` is not the goal `{goal}`", t.formula));
    }
    node_problem(t, system, premises)
}

fn node_problem(t: &ProofTree, system: &AxiomaticSystem, premises: &Multiset) -> Option<String> {
    let f = &t.formula;
    if !f.is_ground() {
        return Some(format!("label `{f}` contains metavariables"));
    }
    match (&t.by, t.is_leaf()) {
        (Justification::Premise, true) => {
            (!premises.contains(f)).then(|| format!("premise leaf `{f}` is not among the premises"))
        }
        (Justification::Axiom { name, subst }, true) => {
            let ok = system
                .rule(name)
                .filter(|r| r.is_axiom())
                .and_then(|r| r.match_instance(&[], std::slice::from_ref(f), subst.as_ref()))
                .is_some();
            (!ok).then(|| format!("`{f}` is not an instance of axiom {name}"))
        }
        (Justification::Rule { name, subst }, false) => {
            let labels: Vec<Formula> = t.children.iter().map(|c| c.formula.clone()).collect();
            let ok = system
                .rule(name)
                .filter(|r| !r.is_axiom())
                .and_then(|r| r.match_instance(&labels, std::slice::from_ref(f), subst.as_ref()))
                .is_some();
            if !ok {
                return Some(format!("node `{f}` is not an instance of rule {name}"));
            }
            t.children.iter().find_map(|c| node_problem(c, system, premises))
        }
        (Justification::Rule { name, .. }, true) => Some(format!("rule {name} applied with no children")),
        (_, false) => Some(format!("node `{f}` has children but is not a rule application")),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::syntax::{atom, imp, parse_multiset};

    fn sys(text: &str) -> AxiomaticSystem {
        AxiomaticSystem::parse(text).unwrap()
    }

    pub(crate) const BCI: &str = "system BCI
axiom I : p -> p
axiom B : (p -> q) -> ((r -> p) -> (r -> q))
axiom C : (p -> (q -> r)) -> (q -> (p -> r))
rule mp : p -> q, p |- q
";

    #[test]
    fn toy_classification() {
        let toy = sys("system toy\natoms x y z\naxiom ax : x\naxiom ay : y\n");
        let t = ProofTree::axiom(atom("x"), "ax");
        let x = atom("x");
        let cases = [
            ("[x, z]", RelevanceVerdict::Plain),
            ("[x, y]", RelevanceVerdict::WeaklyRelevant),
            ("[]", RelevanceVerdict::Relevant),
            ("[x]", RelevanceVerdict::StronglyRelevant),
        ];
        for (gamma, want) in cases {
            let g = parse_multiset(gamma).unwrap();
            assert_eq!(verify(&t, &toy, &g, &x), want, "{gamma}");
        }
    }

    #[test]
    fn leaf_multiset_counts() {
        let (p, q) = (atom("p"), atom("q"));
        let t = ProofTree::rule(q.clone(), "mp", vec![
            ProofTree::premise(imp(p.clone(), q.clone())),
            ProofTree::premise(p.clone()),
        ]);
        assert_eq!(t.leaf_multiset(), parse_multiset("[p -> q, p]").unwrap());
        assert_eq!(ProofTree::premise(p.clone()).leaf_multiset(), parse_multiset("[p]").unwrap());
    }

    #[test]
    fn mp_tree_and_condition_four() {
        let bci = sys(BCI);
        let (p, q) = (atom("p"), atom("q"));
        let t = ProofTree::rule(q.clone(), "mp", vec![
            ProofTree::premise(imp(p.clone(), q.clone())),
            ProofTree::premise(p.clone()),
        ]);
        let g = parse_multiset("[p -> q, p]").unwrap();
        assert_eq!(verify(&t, &bci, &g, &q), RelevanceVerdict::StronglyRelevant);
        let fewer = parse_multiset("[p -> q]").unwrap();
        assert_eq!(verify(&t, &bci, &fewer, &q), RelevanceVerdict::Invalid);
        let more = parse_multiset("[p -> q, p, p]").unwrap();
        assert_eq!(verify(&t, &bci, &more, &q), RelevanceVerdict::Plain);
        let report = verify_report(&t, &bci, &more, &q);
        assert_eq!(report.unused, parse_multiset("[p]").unwrap());
        assert_eq!(verify(&t, &bci, &g, &p), RelevanceVerdict::Invalid);
    }

    #[test]
    fn bad_rule_instance_is_invalid() {
        let bci = sys(BCI);
        let (p, q) = (atom("p"), atom("q"));
        let t = ProofTree::rule(q.clone(), "mp", vec![
            ProofTree::premise(imp(q.clone(), p.clone())),
            ProofTree::premise(p.clone()),
        ]);
        let g = parse_multiset("[q -> p, p]").unwrap();
        assert_eq!(verify(&t, &bci, &g, &q), RelevanceVerdict::Invalid);
        let wrong_axiom = ProofTree::axiom(imp(p.clone(), q.clone()), "I");
        assert_eq!(verify(&wrong_axiom, &bci, &Multiset::new(), &imp(p, q)), RelevanceVerdict::Invalid);
    }

    #[test]
    fn single_premise_is_strongly_relevant() {
        let bci = sys(BCI);
        let f = imp(atom("a"), atom("b"));
        let g: Multiset = [f.clone()].into_iter().collect();
        assert_eq!(verify(&ProofTree::premise(f.clone()), &bci, &g, &f), RelevanceVerdict::StronglyRelevant);
    }
}
