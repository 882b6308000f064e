//! Symmetric consecutions: derivations as sequences of multisets, their
//! bounded search, symmetrization of single-conclusion oracles, and the
//! extraction of tree proofs from derivations.

mod extract;
mod io;
mod search;
mod symmetrize;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Assignment, AxiomaticSystem, Formula, Multiset, Name, ParseError};

pub use extract::{extract_tree, Extraction};
pub use search::{derive_search, DerivabilityOracle, DeriveBounds};
pub use symmetrize::{
    asymmetric, symmetrize, tarskian, Asymmetric, Symmetrization, Tarskian, DEFAULT_PARTITION_CAP,
};

/// The rule applied to produce a step; σ is recomputed when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRule {
    pub name: Name,
    pub subst: Option<Assignment>,
}

/// Γ₁, …, Γₙ with the rule used for each step after the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Multiset>,
    /// `rules[i]` produced `steps[i + 1]`.
    pub rules: Vec<StepRule>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivationVerdict {
    Invalid,
    Plain,
    Relevant,
}

impl fmt::Display for DerivationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivationVerdict::Invalid => "invalid",
            DerivationVerdict::Plain => "plain",
            DerivationVerdict::Relevant => "relevant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("malformed derivation file: {0}")]
    Format(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("derivation is not relevant: {0}")]
    NotRelevant(String),
    #[error("`{0}` is not among the final conclusions")]
    NotConcluded(Formula),
    #[error("rule {0} has more than one conclusion")]
    NotSingleConclusion(Name),
}

/// A rule instance Ψ ▷ Ψ′ with Ψ listed in the rule's premise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepInstance {
    pub rule: Name,
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCheck {
    pub verdict: DerivationVerdict,
    pub instances: Vec<StepInstance>,
    pub problem: Option<String>,
}

impl Derivation {
    pub fn single(m: Multiset) -> Self {
        Derivation { steps: vec![m], rules: vec![] }
    }

    pub fn first(&self) -> &Multiset {
        &self.steps[0]
    }

    pub fn last(&self) -> &Multiset {
        self.steps.last().expect("derivations are nonempty")
    }

    pub fn push(&mut self, m: Multiset, rule: &str) {
        self.steps.push(m);
        self.rules.push(StepRule { name: rule.into(), subst: None });
    }

    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        io::from_json(text)
    }

    pub fn to_json(&self) -> String {
        io::to_json(self)
    }
}

/// Finds an instance of `rule` turning `prev` into `next` in context.
pub fn step_instance(system: &AxiomaticSystem, step: &StepRule, prev: &Multiset, next: &Multiset) -> Option<StepInstance> {
    let rule = system.rule(&step.name)?;
    let removed = prev.difference(next);
    let added = next.difference(prev);
    let (k, m) = (rule.premises.len(), rule.conclusions.len());
    if removed.len() > k || k - removed.len() + added.len() != m {
        return None;
    }
    // Ψ = removed ⊎ K and Ψ′ = added ⊎ K for some shared part K ≤ prev ∸ removed
    let pool = prev.difference(&removed);
    let shared_size = k - removed.len();
    pool.submultisets().into_iter().filter(|s| s.len() == shared_size).find_map(|shared| {
        let left = removed.sum(&shared).to_vec();
        let right = added.sum(&shared).to_vec();
        let sigma = rule.match_instance(&left, &right, step.subst.as_ref())?;
        let inst = |fs: &[Formula]| fs.iter().map(|f| f.substitute(&sigma).expect("matched")).collect();
        Some(StepInstance { rule: rule.name.clone(), premises: inst(&rule.premises), conclusions: inst(&rule.conclusions) })
    })
}

/// Plain when the derivation starts at Γ, every step is a rule application
/// in context, and Δ ≤ the last step; relevant when the last step is Δ.
pub fn check_derivation(d: &Derivation, system: &AxiomaticSystem, premises: &Multiset, conclusions: &Multiset) -> DerivationCheck {
    let invalid = |instances, msg: String| DerivationCheck {
        verdict: DerivationVerdict::Invalid,
        instances,
        problem: Some(msg),
    };
    if d.steps.is_empty() || d.rules.len() + 1 != d.steps.len() {
        return invalid(vec![], "each step after the first needs exactly one rule".into());
    }
    if d.first() != premises {
        return invalid(vec![], format!("first step {} is not the premises {premises}", d.first()));
    }
    let mut instances = Vec::with_capacity(d.rules.len());
    for (i, step) in d.rules.iter().enumerate() {
        let (prev, next) = (&d.steps[i], &d.steps[i + 1]);
        if let Some(f) = next.iter().chain(prev.iter()).find(|f| !f.is_ground()) {
            return invalid(instances, format!("step {} contains metavariables in `{f}`", i + 1));
        }
        match step_instance(system, step, prev, next) {
            Some(inst) => instances.push(inst),
            None => {
                let msg = format!("step {}: {next} does not follow from {prev} by {}", i + 2, step.name);
                return invalid(instances, msg);
            }
        }
    }
    let last = d.last();
    let (verdict, problem) = if last == conclusions {
        (DerivationVerdict::Relevant, None)
    } else if conclusions.is_submultiset(last) {
        (DerivationVerdict::Plain, Some(format!("unused conclusions {}", last.difference(conclusions))))
    } else {
        (DerivationVerdict::Invalid, Some(format!("last step {last} does not contain {conclusions}")))
    };
    DerivationCheck { verdict, instances, problem }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::syntax::parse_multiset;

    pub(crate) fn ms(s: &str) -> Multiset {
        parse_multiset(s).unwrap()
    }

    pub(crate) fn bci() -> AxiomaticSystem {
        AxiomaticSystem::parse(crate::treeproof::tests::BCI).unwrap()
    }

    pub(crate) fn five_premise() -> Derivation {
        let mut d = Derivation::single(ms("[a -> b, a -> c, a, a, a]"));
        d.push(ms("[b, a -> c, a, a]"), "mp");
        d.push(ms("[b, c, a]"), "mp");
        d
    }

    #[test]
    fn five_premise_derivation_is_relevant() {
        let c = check_derivation(&five_premise(), &bci(), &ms("[a -> b, a -> c, a, a, a]"), &ms("[a, b, c]"));
        assert_eq!(c.verdict, DerivationVerdict::Relevant, "{:?}", c.problem);
        let f = |s: &str| crate::syntax::parse_formula(s).unwrap();
        assert_eq!(c.instances[0].premises, vec![f("a -> b"), f("a")]);
    }

    #[test]
    fn axiom_in_context() {
        let mut d = Derivation::single(ms("[a]"));
        d.push(ms("[a, a -> a]"), "I");
        let c = check_derivation(&d, &bci(), &ms("[a]"), &ms("[a -> a, a]"));
        assert_eq!(c.verdict, DerivationVerdict::Relevant);
        assert_eq!(check_derivation(&d, &bci(), &ms("[a]"), &ms("[a]")).verdict, DerivationVerdict::Plain);
    }

    #[test]
    fn illegal_steps() {
        let mut d = Derivation::single(ms("[a -> b, a -> c, a, a]"));
        d.push(ms("[b, a -> c, a]"), "mp");
        d.push(ms("[b, c]"), "mp");
        let g = ms("[a -> b, a -> c, a, a]");
        assert_eq!(check_derivation(&d, &bci(), &g, &ms("[a, b, c]")).verdict, DerivationVerdict::Invalid);
        assert_eq!(check_derivation(&d, &bci(), &g, &ms("[b, c]")).verdict, DerivationVerdict::Relevant);
        let mut bad = Derivation::single(ms("[a]"));
        bad.push(ms("[b]"), "mp");
        assert_eq!(check_derivation(&bad, &bci(), &ms("[a]"), &ms("[b]")).verdict, DerivationVerdict::Invalid);
        let mut wrong_name = Derivation::single(ms("[a]"));
        wrong_name.push(ms("[a, a -> a]"), "B");
        assert_eq!(check_derivation(&wrong_name, &bci(), &ms("[a]"), &ms("[a, a -> a]")).verdict, DerivationVerdict::Invalid);
    }

    #[test]
    fn symmetric_rule_with_shared_part() {
        let sys = AxiomaticSystem::parse("system S symmetric\nrule swap : p, q |- q, p\nrule dup : p |- p, p\n").unwrap();
        let mut d = Derivation::single(ms("[a, b]"));
        d.push(ms("[a, b]"), "swap");
        d.push(ms("[a, a, b]"), "dup");
        assert_eq!(check_derivation(&d, &sys, &ms("[a, b]"), &ms("[a, a, b]")).verdict, DerivationVerdict::Relevant);
    }
}
