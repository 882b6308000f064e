//! Structural laws of consequence relations, checked instance by instance
//! over a finite sample domain.
//!
//! Every law is a universally quantified implication. An instance binds the
//! law's variables to formulas of the domain or to multisets over it; every
//! multiset an instance mentions has at most `max_size` elements. Laws are
//! enumerated with the antecedent checked as soon as its variables are bound,
//! and fall back to seeded sampling when enumeration exceeds its budget.

use std::fmt;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{Cached, ConsequenceOracle, SymmetricOracle, Verdict};
use crate::symmetric::{Asymmetric, Symmetrization};
use crate::syntax::{numeral, Formula, Multiset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Reflexivity,
    Cut,
    Monotonicity,
    Contraction,
    RelevantCut,
    TheoremRemoval,
    GeneralizedReflexivity,
    Transitivity,
    Compatibility,
    RContraction,
    MultiCut,
    TheoremReflexivity,
}

impl Law {
    pub const ALL: [Law; 12] = [
        Law::Reflexivity,
        Law::Cut,
        Law::Monotonicity,
        Law::Contraction,
        Law::RelevantCut,
        Law::TheoremRemoval,
        Law::GeneralizedReflexivity,
        Law::Transitivity,
        Law::Compatibility,
        Law::RContraction,
        Law::MultiCut,
        Law::TheoremReflexivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Reflexivity => "Reflexivity",
            Law::Cut => "Cut",
            Law::Monotonicity => "Monotonicity",
            Law::Contraction => "Contraction",
            Law::RelevantCut => "RelevantCut",
            Law::TheoremRemoval => "TheoremRemoval",
            Law::GeneralizedReflexivity => "GeneralizedReflexivity",
            Law::Transitivity => "Transitivity",
            Law::Compatibility => "Compatibility",
            Law::RContraction => "rContraction",
            Law::MultiCut => "MultiCut",
            Law::TheoremReflexivity => "TheoremReflexivity",
        }
    }

    pub fn from_name(s: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    /// Whether the law has a single-conclusion and a symmetric statement.
    pub fn has_form(self, form: Form) -> bool {
        use Law::*;
        match form {
            Form::Asymmetric => {
                matches!(self, Reflexivity | Cut | Monotonicity | Contraction | RelevantCut | TheoremRemoval | GeneralizedReflexivity)
            }
            Form::Symmetric => !matches!(self, Cut | RelevantCut),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// Multisets of premises against single formulas.
    Asymmetric,
    /// Multisets against multisets.
    Symmetric,
}

/// A finite universe of formulas and a bound on multiset size.
#[derive(Clone, Debug)]
pub struct SampleDomain {
    pub universe: Vec<Formula>,
    pub max_size: usize,
    pub seed: u64,
    /// Enumeration visiting more partial instances than this switches to sampling.
    pub exhaustive_limit: u64,
    pub samples: u64,
}

/// Partial instances visited before enumeration gives way to sampling.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_SAMPLES: u64 = 100_000;

impl SampleDomain {
    pub fn new(universe: Vec<Formula>, max_size: usize) -> Self {
        SampleDomain {
            universe,
            max_size,
            seed: crate::DEFAULT_SEED,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn numerals(lo: i64, hi: i64, max_size: usize) -> Self {
        SampleDomain::new((lo..=hi).map(numeral).collect(), max_size)
    }

    /// Multisets over `elems` of size at most `max_size`, by size, then in
    /// the order of `elems`.
    pub fn multisets_over(elems: &[Formula], max_size: usize) -> Vec<Multiset> {
        let mut out = vec![];
        for size in 0..=max_size {
            let mut idx = vec![0usize; size];
            if size > 0 && elems.is_empty() {
                break;
            }
            loop {
                out.push(idx.iter().map(|&i| elems[i].clone()).collect());
                // next non-decreasing index sequence
                let Some(pos) = (0..size).rev().find(|&p| idx[p] + 1 < elems.len()) else {
                    break;
                };
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
            }
        }
        out
    }

    pub fn multisets(&self) -> Vec<Multiset> {
        SampleDomain::multisets_over(&self.universe, self.max_size)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Formula(Formula),
    Multiset(Multiset),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Formula(x) => write!(f, "{x}"),
            Value::Multiset(m) => write!(f, "{m}"),
        }
    }
}

/// Variable bindings of one instance, in the law's variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance(pub Vec<(&'static str, Value)>);

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(n, v)| format!("{n}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawOutcome {
    Passed { exhaustive: bool, instances: u64 },
    Counterexample(Instance),
    Inconclusive { unknown: u64 },
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, LawOutcome::Passed { .. })
    }

    pub fn exhaustive_pass(&self) -> bool {
        matches!(self, LawOutcome::Passed { exhaustive: true, .. })
    }

    pub fn failed(&self) -> bool {
        matches!(self, LawOutcome::Counterexample(_))
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            LawOutcome::Passed { .. } => Verdict::Holds,
            LawOutcome::Counterexample(_) => Verdict::Fails,
            LawOutcome::Inconclusive { .. } => Verdict::Unknown,
        }
    }
}

/// An oracle seen both ways: a single-conclusion subject is symmetrized, a
/// symmetric one restricted to single conclusions.
pub struct Subject<'a> {
    pub name: String,
    pub primary: Form,
    asym: Rc<dyn ConsequenceOracle + 'a>,
    sym: Rc<dyn SymmetricOracle + 'a>,
    /// The symmetrization of `asym`; equal to `sym` for single-conclusion subjects.
    asym_sym: Rc<dyn SymmetricOracle + 'a>,
}

impl<'a> Subject<'a> {
    pub fn asymmetric(name: &str, oracle: impl ConsequenceOracle + 'a) -> Self {
        let asym: Rc<dyn ConsequenceOracle + 'a> = Rc::new(Cached::new(oracle));
        let sym: Rc<dyn SymmetricOracle + 'a> = Rc::new(Cached::new(Symmetrization::new(asym.clone())));
        Subject { name: name.into(), primary: Form::Asymmetric, asym, asym_sym: sym.clone(), sym }
    }

    /// `basis` is passed to the asymmetric part, see [`Asymmetric`].
    pub fn symmetric(name: &str, oracle: impl SymmetricOracle + 'a, basis: Option<Vec<Formula>>) -> Self {
        let sym: Rc<dyn SymmetricOracle + 'a> = Rc::new(Cached::new(oracle));
        let asym: Rc<dyn ConsequenceOracle + 'a> = Rc::new(Cached::new(Asymmetric::new(sym.clone(), basis)));
        let asym_sym: Rc<dyn SymmetricOracle + 'a> = Rc::new(Cached::new(Symmetrization::new(asym.clone())));
        Subject { name: name.into(), primary: Form::Symmetric, asym, sym, asym_sym }
    }

    pub fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        self.asym.entails(premises, conclusion)
    }

    pub fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        self.sym.entails_sym(premises, conclusions)
    }

    /// The form a law is checked in: the subject's own when the law has one.
    pub fn form_for(&self, law: Law) -> Form {
        if law.has_form(self.primary) {
            self.primary
        } else if self.primary == Form::Asymmetric {
            Form::Symmetric
        } else {
            Form::Asymmetric
        }
    }
}

#[derive(Clone, Copy)]
enum Var {
    Formula,
    Multiset,
    NonEmpty,
    /// Multisets of domain theorems.
    Theorems,
}

type Eval<'s> = Box<dyn Fn(&Subject<'_>, &Bound<'_>) -> Verdict + 's>;

/// A condition evaluated once the first `needs` variables are bound.
struct Clause<'s> {
    needs: usize,
    consequent: bool,
    eval: Eval<'s>,
}

struct Bound<'v>(&'v [Value]);

impl Bound<'_> {
    fn f(&self, i: usize) -> &Formula {
        match &self.0[i] {
            Value::Formula(f) => f,
            Value::Multiset(_) => unreachable!("variable {i} is a formula"),
        }
    }

    fn m(&self, i: usize) -> &Multiset {
        match &self.0[i] {
            Value::Multiset(m) => m,
            Value::Formula(_) => unreachable!("variable {i} is a multiset"),
        }
    }
}

fn with(m: &Multiset, extra: &[&Formula]) -> Multiset {
    let mut out = m.clone();
    for f in extra {
        out.insert((*f).clone());
    }
    out
}

struct Statement<'s> {
    vars: Vec<(&'static str, Var)>,
    clauses: Vec<Clause<'s>>,
}

impl<'s> Statement<'s> {
    fn new(vars: &[(&'static str, Var)]) -> Self {
        Statement { vars: vars.to_vec(), clauses: vec![] }
    }

    fn size(mut self, needs: usize, k: usize, total: impl Fn(&Bound<'_>) -> usize + 's) -> Self {
        self.clauses.push(Clause { needs, consequent: false, eval: Box::new(move |_, b| Verdict::from_bool(total(b) <= k)) });
        self
    }

    fn given(mut self, needs: usize, eval: impl Fn(&Subject<'_>, &Bound<'_>) -> Verdict + 's) -> Self {
        self.clauses.push(Clause { needs, consequent: false, eval: Box::new(eval) });
        self
    }

    fn then(mut self, eval: impl Fn(&Subject<'_>, &Bound<'_>) -> Verdict + 's) -> Self {
        let needs = self.vars.len();
        self.clauses.push(Clause { needs, consequent: true, eval: Box::new(eval) });
        self
    }
}

fn statement<'s>(law: Law, form: Form, k: usize) -> Statement<'s> {
    use Var::*;
    match (form, law) {
        (Form::Asymmetric, Law::Reflexivity) => {
            Statement::new(&[("φ", Formula)]).then(|s, b| s.asym.entails(&crate::syntax::Multiset::singleton(b.f(0).clone()), b.f(0)))
        }
        (Form::Asymmetric, Law::Cut) => Statement::new(&[("Γ", Multiset), ("ψ", Formula), ("φ", Formula), ("Δ", Multiset)])
            .size(1, k, |b| b.m(0).len() + 1)
            .given(3, |s, b| s.asym.entails(&with(b.m(0), &[b.f(1)]), b.f(2)))
            .size(4, k, |b| b.m(0).len() + b.m(3).len())
            .given(4, |s, b| s.asym.entails(b.m(3), b.f(1)))
            .then(|s, b| s.asym.entails(&b.m(0).sum(b.m(3)), b.f(2))),
        (Form::Asymmetric, Law::Monotonicity) => Statement::new(&[("Γ", Multiset), ("φ", Formula), ("Δ", Multiset)])
            .given(2, |s, b| s.asym.entails(b.m(0), b.f(1)))
            .size(3, k, |b| b.m(0).len() + b.m(2).len())
            .then(|s, b| s.asym.entails(&b.m(0).sum(b.m(2)), b.f(1))),
        (Form::Asymmetric, Law::Contraction) => Statement::new(&[("Γ", Multiset), ("ψ", Formula), ("φ", Formula)])
            .size(1, k, |b| b.m(0).len() + 2)
            .given(3, |s, b| s.asym.entails(&with(b.m(0), &[b.f(1), b.f(1)]), b.f(2)))
            .then(|s, b| s.asym.entails(&with(b.m(0), &[b.f(1)]), b.f(2))),
        // χ₁…χₙ ⊢ φ and Δᵢ ⊢ χᵢ for a split of Δ is Δ ⊢ˢ [χ₁…χₙ]
        (Form::Asymmetric, Law::RelevantCut) => Statement::new(&[("χs", NonEmpty), ("φ", Formula), ("Δ", Multiset)])
            .given(2, |s, b| s.asym.entails(b.m(0), b.f(1)))
            .given(3, |s, b| s.asym_sym.entails_sym(b.m(2), b.m(0)))
            .then(|s, b| s.asym.entails(b.m(2), b.f(1))),
        (Form::Asymmetric, Law::TheoremRemoval) => Statement::new(&[("Γ", Multiset), ("Θ", Theorems), ("φ", Formula)])
            .size(2, k, |b| b.m(0).len() + b.m(1).len())
            .given(3, |s, b| s.asym.entails(&b.m(0).sum(b.m(1)), b.f(2)))
            .then(|s, b| s.asym.entails(b.m(0), b.f(2))),
        (Form::Asymmetric, Law::GeneralizedReflexivity) => Statement::new(&[("Γ", Multiset), ("φ", Formula)])
            .size(1, k, |b| b.m(0).len() + 1)
            .then(|s, b| s.asym.entails(&with(b.m(0), &[b.f(1)]), b.f(1))),

        (Form::Symmetric, Law::Reflexivity) => {
            Statement::new(&[("Γ", Multiset)]).then(|s, b| s.sym.entails_sym(b.m(0), b.m(0)))
        }
        (Form::Symmetric, Law::Transitivity) => Statement::new(&[("Γ", Multiset), ("Δ", Multiset), ("Ψ", Multiset)])
            .given(2, |s, b| s.sym.entails_sym(b.m(0), b.m(1)))
            .given(3, |s, b| s.sym.entails_sym(b.m(1), b.m(2)))
            .then(|s, b| s.sym.entails_sym(b.m(0), b.m(2))),
        (Form::Symmetric, Law::Compatibility) => Statement::new(&[("Γ", Multiset), ("Δ", Multiset), ("Ψ", Multiset)])
            .given(2, |s, b| s.sym.entails_sym(b.m(0), b.m(1)))
            .size(3, k, |b| (b.m(0).len() + b.m(2).len()).max(b.m(1).len() + b.m(2).len()))
            .then(|s, b| s.sym.entails_sym(&b.m(0).sum(b.m(2)), &b.m(1).sum(b.m(2)))),
        (Form::Symmetric, Law::Monotonicity) => Statement::new(&[("Γ", Multiset), ("Δ", Multiset), ("Ψ", Multiset)])
            .given(2, |s, b| s.sym.entails_sym(b.m(0), b.m(1)))
            .size(3, k, |b| b.m(0).len() + b.m(2).len())
            .then(|s, b| s.sym.entails_sym(&b.m(0).sum(b.m(2)), b.m(1))),
        (Form::Symmetric, Law::Contraction) => Statement::new(&[("Γ", Multiset), ("ψ", Formula), ("Δ", Multiset)])
            .size(1, k, |b| b.m(0).len() + 2)
            .given(3, |s, b| s.sym.entails_sym(&with(b.m(0), &[b.f(1), b.f(1)]), b.m(2)))
            .then(|s, b| s.sym.entails_sym(&with(b.m(0), &[b.f(1)]), b.m(2))),
        (Form::Symmetric, Law::RContraction) => Statement::new(&[("Γ", Multiset), ("Δ", Multiset), ("ψ", Formula)])
            .size(2, k, |b| b.m(1).len() + 2)
            .given(3, |s, b| s.sym.entails_sym(b.m(0), &with(b.m(1), &[b.f(2), b.f(2)])))
            .then(|s, b| s.sym.entails_sym(b.m(0), &with(b.m(1), &[b.f(2)]))),
        (Form::Symmetric, Law::GeneralizedReflexivity) => Statement::new(&[("Γ", Multiset), ("Δ", Multiset)])
            .size(2, k, |b| b.m(0).len() + b.m(1).len())
            .then(|s, b| s.sym.entails_sym(&b.m(0).sum(b.m(1)), b.m(0))),
        (Form::Symmetric, Law::TheoremReflexivity) => {
            Statement::new(&[("Γ", Multiset)]).then(|s, b| s.sym.entails_sym(b.m(0), &crate::syntax::Multiset::new()))
        }
        (Form::Symmetric, Law::MultiCut) => {
            Statement::new(&[("Γ", Multiset), ("Δ", Multiset), ("Ψ", Multiset), ("Φ", Multiset)])
                .given(2, |s, b| s.sym.entails_sym(b.m(0), b.m(1)))
                .size(3, k, |b| (b.m(1).len() + b.m(2).len()).max(b.m(0).len() + b.m(2).len()))
                .given(4, |s, b| s.sym.entails_sym(&b.m(1).sum(b.m(2)), b.m(3)))
                .then(|s, b| s.sym.entails_sym(&b.m(0).sum(b.m(2)), b.m(3)))
        }
        (Form::Symmetric, Law::TheoremRemoval) => Statement::new(&[("Δ", Multiset), ("Ψ", Multiset), ("Φ", Multiset)])
            .given(1, |s, b| s.sym.entails_sym(&crate::syntax::Multiset::new(), b.m(0)))
            .size(2, k, |b| b.m(0).len() + b.m(1).len())
            .given(3, |s, b| s.sym.entails_sym(&b.m(0).sum(b.m(1)), b.m(2)))
            .then(|s, b| s.sym.entails_sym(b.m(1), b.m(2))),
        (form, law) => unreachable!("{law} has no {form:?} statement"),
    }
}

struct Domains {
    formulas: Vec<Value>,
    multisets: Vec<Value>,
    nonempty: Vec<Value>,
    theorems: Vec<Value>,
}

impl Domains {
    fn new(subject: &Subject<'_>, dom: &SampleDomain) -> Self {
        let multisets: Vec<Value> = dom.multisets().into_iter().map(Value::Multiset).collect();
        let thms: Vec<Formula> =
            dom.universe.iter().filter(|f| subject.asym.entails(&Multiset::new(), f).holds()).cloned().collect();
        Domains {
            formulas: dom.universe.iter().cloned().map(Value::Formula).collect(),
            nonempty: multisets.iter().filter(|v| !matches!(v, Value::Multiset(m) if m.is_empty())).cloned().collect(),
            theorems: SampleDomain::multisets_over(&thms, dom.max_size).into_iter().map(Value::Multiset).collect(),
            multisets,
        }
    }

    fn of(&self, v: Var) -> &[Value] {
        match v {
            Var::Formula => &self.formulas,
            Var::Multiset => &self.multisets,
            Var::NonEmpty => &self.nonempty,
            Var::Theorems => &self.theorems,
        }
    }
}

#[derive(Default)]
struct Tally {
    visited: u64,
    instances: u64,
    unknown: u64,
}

enum Walk {
    Done,
    Found(Vec<Value>),
    OverBudget,
}

/// Checks one law, in the form chosen by [`Subject::form_for`].
pub fn check_law(subject: &Subject<'_>, law: Law, dom: &SampleDomain) -> LawOutcome {
    check_law_in(subject, law, subject.form_for(law), dom)
}

pub fn check_law_in(subject: &Subject<'_>, law: Law, form: Form, dom: &SampleDomain) -> LawOutcome {
    let st = statement(law, form, dom.max_size);
    let domains = Domains::new(subject, dom);
    let name = |vals: Vec<Value>| Instance(st.vars.iter().map(|(n, _)| *n).zip(vals).collect());
    let mut tally = Tally::default();
    let mut vals = Vec::with_capacity(st.vars.len());
    match walk(subject, &st, &domains, dom.exhaustive_limit, &mut vals, &mut tally) {
        Walk::Found(vals) => return LawOutcome::Counterexample(name(vals)),
        Walk::Done if tally.unknown == 0 => return LawOutcome::Passed { exhaustive: true, instances: tally.instances },
        Walk::Done => return LawOutcome::Inconclusive { unknown: tally.unknown },
        Walk::OverBudget => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(dom.seed);
    let mut tally = Tally::default();
    for _ in 0..dom.samples {
        let vals: Vec<Value> = st
            .vars
            .iter()
            .map(|(_, v)| {
                let d = domains.of(*v);
                d[rng.gen_range(0..d.len())].clone()
            })
            .collect();
        match judge(subject, &st, &vals, st.vars.len(), &mut tally) {
            Some(true) => return LawOutcome::Counterexample(name(vals)),
            _ => continue,
        }
    }
    if tally.unknown == 0 {
        LawOutcome::Passed { exhaustive: false, instances: tally.instances }
    } else {
        LawOutcome::Inconclusive { unknown: tally.unknown }
    }
}

/// Evaluates the clauses that become decidable with `bound` variables.
/// `None` means the branch is vacuous, `Some(true)` a violation.
fn judge(subject: &Subject<'_>, st: &Statement<'_>, vals: &[Value], bound: usize, tally: &mut Tally) -> Option<bool> {
    let b = Bound(vals);
    let full = bound == st.vars.len();
    let mut ante = Verdict::Holds;
    for c in &st.clauses {
        let ready = if full { c.needs <= bound } else { c.needs == bound };
        if !ready || c.consequent {
            continue;
        }
        ante = ante.and((c.eval)(subject, &b));
        if ante.fails() {
            return None;
        }
    }
    if !full {
        // an unknown antecedent keeps the branch open
        return Some(false);
    }
    tally.instances += 1;
    let cons = st.clauses.iter().filter(|c| c.consequent).map(|c| (c.eval)(subject, &b)).fold(Verdict::Holds, Verdict::and);
    match (ante, cons) {
        (_, Verdict::Holds) => Some(false),
        (Verdict::Holds, Verdict::Fails) => Some(true),
        _ => {
            tally.unknown += 1;
            Some(false)
        }
    }
}

fn walk(
    subject: &Subject<'_>,
    st: &Statement<'_>,
    domains: &Domains,
    limit: u64,
    vals: &mut Vec<Value>,
    tally: &mut Tally,
) -> Walk {
    let depth = vals.len();
    if depth == st.vars.len() {
        return Walk::Done;
    }
    for v in domains.of(st.vars[depth].1) {
        tally.visited += 1;
        if tally.visited > limit {
            return Walk::OverBudget;
        }
        vals.push(v.clone());
        match judge(subject, st, vals, depth + 1, tally) {
            None => {}
            Some(true) => return Walk::Found(vals.clone()),
            Some(false) => match walk(subject, st, domains, limit, vals, tally) {
                Walk::Done => {}
                other => return other,
            },
        }
        vals.pop();
    }
    Walk::Done
}

/// Γ ⊢ₘ φ iff Δ ⊢ φ for some Δ ≤ Γ.
pub fn monotonic_companion<O: ConsequenceOracle + ?Sized>(oracle: &O, premises: &Multiset, conclusion: &Formula) -> Verdict {
    Verdict::any(premises.submultisets().iter().map(|d| oracle.entails(d, conclusion)))
}

/// The least monotone relation containing an oracle.
pub struct Companion<O>(pub O);

impl<O: ConsequenceOracle> ConsequenceOracle for Companion<O> {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        monotonic_companion(&self.0, premises, conclusion)
    }

    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        self.0.theorem_basis()
    }

    /// Every theorem is entailed by the empty submultiset.
    fn entails_every_theorem(&self, _premises: &Multiset) -> Verdict {
        Verdict::Holds
    }
}

/// An implication between laws, all in symmetric form unless noted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaAssertion {
    pub name: &'static str,
    pub premises: Vec<(Law, Form)>,
    pub conclusions: Vec<(Law, Form)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetaStatus {
    /// Every premise law passed exhaustively and so did every conclusion.
    Confirmed,
    /// Some premise law failed; nothing to check.
    Vacuous,
    /// Premises passed exhaustively but a conclusion failed.
    Violated,
    /// A premise or conclusion was sampled or unknown.
    Inconclusive,
}

pub fn meta_assertions() -> Vec<MetaAssertion> {
    use Form::*;
    use Law::*;
    let s = |laws: &[Law]| laws.iter().map(|&l| (l, Symmetric)).collect::<Vec<_>>();
    vec![
        MetaAssertion { name: "refl+mono=>genrefl", premises: s(&[Reflexivity, Monotonicity]), conclusions: s(&[GeneralizedReflexivity]) },
        MetaAssertion { name: "genrefl+trans=>mono", premises: s(&[GeneralizedReflexivity, Transitivity]), conclusions: s(&[Monotonicity]) },
        MetaAssertion { name: "thmrefl+compat=>genrefl", premises: s(&[TheoremReflexivity, Compatibility]), conclusions: s(&[GeneralizedReflexivity]) },
        MetaAssertion { name: "multicut=>trans+thmremoval", premises: s(&[MultiCut]), conclusions: s(&[Transitivity, TheoremRemoval]) },
        MetaAssertion { name: "multicut+refl=>compat", premises: s(&[MultiCut, Reflexivity]), conclusions: s(&[Compatibility]) },
        MetaAssertion { name: "trans+compat=>multicut", premises: s(&[Transitivity, Compatibility]), conclusions: s(&[MultiCut]) },
    ]
}

/// Reflexivity and Cut give Relevant Cut and Theorem Removal.
pub fn cut_lemma() -> MetaAssertion {
    use Form::Asymmetric;
    use Law::*;
    MetaAssertion {
        name: "cr=>relcut+thmremoval",
        premises: vec![(Reflexivity, Asymmetric), (Cut, Asymmetric)],
        conclusions: vec![(RelevantCut, Asymmetric), (TheoremRemoval, Asymmetric)],
    }
}

#[derive(Clone, Debug)]
pub struct LawResult {
    pub law: Law,
    pub form: Form,
    pub outcome: LawOutcome,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub subject: String,
    pub results: Vec<LawResult>,
    pub is_cr: Verdict,
    pub is_scr: Verdict,
    pub is_monotone: Verdict,
    pub is_contractive: Verdict,
    pub is_tarskian: Verdict,
    pub meta: Vec<(MetaAssertion, MetaStatus)>,
}

impl Classification {
    pub fn outcome(&self, law: Law, form: Form) -> Option<&LawOutcome> {
        self.results.iter().find(|r| r.law == law && r.form == form).map(|r| &r.outcome)
    }

    /// No meta-assertion is violated.
    pub fn consistent(&self) -> bool {
        self.meta.iter().all(|(_, s)| *s != MetaStatus::Violated)
    }

    /// `LAW <name> PASS|FAIL|UNKNOWN <witness>` lines for the subject's own form.
    pub fn law_lines(&self, primary: Form) -> Vec<String> {
        Law::ALL
            .iter()
            .filter_map(|&law| {
                let form = if law.has_form(primary) { primary } else { other(primary) };
                let o = self.outcome(law, form)?;
                let suffix = if form == primary { "" } else { "^" };
                Some(match o {
                    LawOutcome::Passed { exhaustive, instances } => {
                        let how = if *exhaustive { "exhaustive" } else { "sampled" };
                        format!("LAW {law}{suffix} PASS {how} {instances}")
                    }
                    LawOutcome::Counterexample(i) => format!("LAW {law}{suffix} FAIL {i}"),
                    LawOutcome::Inconclusive { unknown } => format!("LAW {law}{suffix} UNKNOWN {unknown}"),
                })
            })
            .collect()
    }
}

fn other(f: Form) -> Form {
    match f {
        Form::Asymmetric => Form::Symmetric,
        Form::Symmetric => Form::Asymmetric,
    }
}

/// Runs every law in both forms and the implication checks.
pub fn classify(subject: &Subject<'_>, dom: &SampleDomain) -> Classification {
    let mut results = vec![];
    for form in [Form::Asymmetric, Form::Symmetric] {
        for law in Law::ALL.into_iter().filter(|l| l.has_form(form)) {
            results.push(LawResult { law, form, outcome: check_law_in(subject, law, form, dom) });
        }
    }
    let get = |law: Law, form: Form| {
        results.iter().find(|r| r.law == law && r.form == form).map(|r| r.outcome.verdict()).expect("all laws run")
    };
    let p = subject.primary;
    let is_cr = get(Law::Reflexivity, Form::Asymmetric).and(get(Law::Cut, Form::Asymmetric));
    let is_scr = Verdict::all([Law::Reflexivity, Law::Transitivity, Law::Compatibility].map(|l| get(l, Form::Symmetric)));
    let is_monotone = get(Law::Monotonicity, p);
    let is_contractive = match p {
        Form::Asymmetric => get(Law::Contraction, p),
        Form::Symmetric => get(Law::Contraction, p).and(get(Law::RContraction, p)),
    };
    let base = if p == Form::Asymmetric { is_cr } else { is_scr };
    let is_tarskian = Verdict::all([base, is_monotone, is_contractive]);
    let mut meta = vec![];
    for m in meta_assertions().into_iter().chain([cut_lemma()]) {
        let find = |(law, form): &(Law, Form)| {
            results.iter().find(|r| r.law == *law && r.form == *form).map(|r| r.outcome.clone()).expect("all laws run")
        };
        let prem: Vec<LawOutcome> = m.premises.iter().map(find).collect();
        let conc: Vec<LawOutcome> = m.conclusions.iter().map(find).collect();
        let status = if prem.iter().any(LawOutcome::failed) {
            MetaStatus::Vacuous
        } else if !prem.iter().all(LawOutcome::exhaustive_pass) {
            MetaStatus::Inconclusive
        } else if conc.iter().any(LawOutcome::failed) {
            MetaStatus::Violated
        } else if conc.iter().all(LawOutcome::exhaustive_pass) {
            MetaStatus::Confirmed
        } else {
            MetaStatus::Inconclusive
        };
        meta.push((m, status));
    }
    Classification {
        subject: subject.name.clone(),
        results,
        is_cr,
        is_scr,
        is_monotone,
        is_contractive,
        is_tarskian,
        meta,
    }
}
