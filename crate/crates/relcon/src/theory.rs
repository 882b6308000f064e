//! Principal theories Th(Γ) = {Δ | Γ ⊢ Δ} of a symmetric oracle, their
//! monoid under generator sum, and the mutual-entailment quotient.
//!
//! Theories are never enumerated. Order and equality reduce to entailment
//! between generators; the checks below compare that reduction with
//! membership restricted to a finite domain of multisets.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::laws::{check_law_in, Form, Law, LawOutcome, SampleDomain, Subject};
use crate::oracle::{SymmetricOracle, Verdict};
use crate::syntax::{Formula, Multiset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("theories over different oracles are incomparable")]
    OracleMismatch,
    #[error("union characterization needs a monotone and contractive oracle: {0}")]
    Precondition(String),
}

pub type SharedOracle = Arc<dyn SymmetricOracle>;

#[derive(Clone)]
pub struct TheoryHandle {
    pub generator: Multiset,
    pub oracle: SharedOracle,
}

impl fmt::Debug for TheoryHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Th({})", self.generator)
    }
}

impl fmt::Display for TheoryHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Th({})", self.generator)
    }
}

impl TheoryHandle {
    pub fn new(oracle: SharedOracle, generator: Multiset) -> Self {
        TheoryHandle { generator, oracle }
    }

    pub fn zero(oracle: SharedOracle) -> Self {
        TheoryHandle::new(oracle, Multiset::new())
    }

    pub fn same_oracle(&self, other: &TheoryHandle) -> bool {
        // compare data pointers only; vtables may be duplicated across units
        std::ptr::eq(Arc::as_ptr(&self.oracle) as *const (), Arc::as_ptr(&other.oracle) as *const ())
    }

    fn guard(&self, other: &TheoryHandle) -> Result<(), TheoryError> {
        if self.same_oracle(other) {
            Ok(())
        } else {
            Err(TheoryError::OracleMismatch)
        }
    }
}

pub fn th_contains(t: &TheoryHandle, member: &Multiset) -> Verdict {
    t.oracle.entails_sym(&t.generator, member)
}

pub fn th_zero(oracle: SharedOracle) -> TheoryHandle {
    TheoryHandle::zero(oracle)
}

pub fn th_add(t: &TheoryHandle, s: &TheoryHandle) -> Result<TheoryHandle, TheoryError> {
    t.guard(s)?;
    Ok(TheoryHandle::new(t.oracle.clone(), t.generator.sum(&s.generator)))
}

/// Th(Γ) ⊆ Th(Δ) iff Δ ⊢ Γ.
pub fn th_leq(t: &TheoryHandle, s: &TheoryHandle) -> Result<Verdict, TheoryError> {
    t.guard(s)?;
    Ok(s.oracle.entails_sym(&s.generator, &t.generator))
}

pub fn th_eq(t: &TheoryHandle, s: &TheoryHandle) -> Result<Verdict, TheoryError> {
    Ok(th_leq(t, s)?.and(th_leq(s, t)?))
}

/// One property checked over a domain, with the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub verdict: Verdict,
    pub instances: u64,
    pub witness: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.verdict {
            Verdict::Holds => "PASS",
            Verdict::Fails => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        };
        write!(f, "CHECK {} {status} {}", self.name, self.instances)?;
        if let Some(w) = &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    verdict: Verdict,
    instances: u64,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, verdict: Verdict::Holds, instances: 0, witness: None }
    }

    /// Records `ante ⇒ cons`; returns false once a violation is recorded.
    fn imply(&mut self, ante: Verdict, cons: Verdict, witness: impl FnOnce() -> String) -> bool {
        self.instances += 1;
        let v = ante.not().or(cons);
        if v.fails() {
            self.verdict = Verdict::Fails;
            self.witness = Some(witness());
            return false;
        }
        self.verdict = self.verdict.and(v);
        true
    }

    fn done(self) -> Check {
        Check { name: self.name, verdict: self.verdict, instances: self.instances, witness: self.witness }
    }
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub checks: Vec<Check>,
    /// Both sides of the monotonicity characterization, computed independently.
    pub oracle_monotone: Verdict,
    pub th_monotone: Verdict,
}

impl QuotientReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every check passed and the characterization agrees.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.holds())
    }
}

/// Fixed-width membership sets over the domain.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Entailments between interned multisets, each pair asked once.
struct Memo<'o> {
    oracle: &'o dyn SymmetricOracle,
    ids: HashMap<Multiset, usize>,
    items: Vec<Multiset>,
    ent: HashMap<(usize, usize), Verdict>,
    /// Row-major answers for ids below `dense_ids`.
    dense: Vec<Option<Verdict>>,
    dense_ids: usize,
}

impl<'o> Memo<'o> {
    fn new(oracle: &'o dyn SymmetricOracle) -> Self {
        Memo { oracle, ids: HashMap::new(), items: vec![], ent: HashMap::new(), dense: vec![], dense_ids: 0 }
    }

    fn id(&mut self, m: Multiset) -> usize {
        if let Some(&i) = self.ids.get(&m) {
            return i;
        }
        self.items.push(m.clone());
        self.ids.insert(m, self.items.len() - 1);
        self.items.len() - 1
    }

    /// Switches ids interned so far to table lookup.
    fn densify(&mut self) {
        self.dense_ids = self.items.len();
        self.dense = vec![None; self.dense_ids * self.dense_ids];
    }

    fn ent(&mut self, a: usize, b: usize) -> Verdict {
        let (oracle, items) = (self.oracle, &self.items);
        if a < self.dense_ids && b < self.dense_ids {
            return *self.dense[a * self.dense_ids + b].get_or_insert_with(|| oracle.entails_sym(&items[a], &items[b]));
        }
        *self.ent.entry((a, b)).or_insert_with(|| oracle.entails_sym(&items[a], &items[b]))
    }

    fn eqv(&mut self, a: usize, b: usize) -> Verdict {
        self.ent(a, b).and(self.ent(b, a))
    }
}

/// Checks the quotient construction on every generator of `domain`.
///
/// Entailments are memoized over interned multisets; theory inclusion is
/// read extensionally, as inclusion of the members that lie in the domain.
pub fn quotient_check(oracle: &SharedOracle, domain: &[Multiset]) -> QuotientReport {
    let mut memo = Memo::new(oracle.as_ref());
    let idx: Vec<usize> = domain.iter().map(|m| memo.id(m.clone())).collect();
    let n = domain.len();
    let ent: Vec<Vec<Verdict>> = (0..n).map(|g| (0..n).map(|d| memo.ent(idx[g], idx[d])).collect()).collect();
    let members: Vec<Bits> = ent
        .iter()
        .map(|row| {
            let mut b = Bits::new(n);
            row.iter().enumerate().filter(|(_, v)| v.holds()).for_each(|(j, _)| b.set(j));
            b
        })
        .collect();
    let sum2: Vec<Vec<usize>> =
        (0..n).map(|g| (0..n).map(|d| memo.id(domain[g].sum(&domain[d]))).collect()).collect();
    memo.densify();
    let known = ent.iter().flatten().all(|v| *v != Verdict::Unknown);
    let eqv = |i: usize, j: usize| ent[i][j].and(ent[j][i]);
    let show = |i: usize| domain[i].to_string();
    let th = |g: &Multiset| TheoryHandle::new(oracle.clone(), g.clone());
    let mut checks = vec![];

    let mut refl = Tally::new("equivalence-reflexive");
    for i in 0..n {
        if !refl.imply(Verdict::Holds, eqv(i, i), || show(i)) {
            break;
        }
    }
    checks.push(refl.done());

    let mut trans = Tally::new("equivalence-transitive");
    'outer: for i in 0..n {
        for j in (0..n).filter(|&j| !eqv(i, j).fails()) {
            for k in 0..n {
                if !trans.imply(eqv(i, j).and(eqv(j, k)), eqv(i, k), || format!("{} {} {}", show(i), show(j), show(k))) {
                    break 'outer;
                }
            }
        }
    }
    checks.push(trans.done());

    // pairs of equivalent generators, the only antecedents that matter below
    let classes: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !eqv(i, j).fails()).collect();

    let mut cong = Tally::new("congruence");
    let mut order_classes = Tally::new("order-respects-classes");
    'outer: for &(g, g2) in &classes {
        for &(d, d2) in &classes {
            let ante = eqv(g, g2).and(eqv(d, d2));
            let both = memo.eqv(sum2[g][d], sum2[g2][d2]);
            let w = || format!("{} {} {} {}", show(g), show(g2), show(d), show(d2));
            if !cong.imply(ante, both, w) {
                break 'outer;
            }
            if !order_classes.imply(ante.and(ent[g][d]), ent[g2][d2], w) {
                break 'outer;
            }
        }
    }
    checks.push(cong.done());
    checks.push(order_classes.done());

    let mut ordered = Tally::new("order-compatible-with-sum");
    'outer: for g in 0..n {
        for d in (0..n).filter(|&d| !ent[g][d].fails()) {
            for p in 0..n {
                let cons = memo.ent(sum2[g][p], sum2[d][p]);
                if !ordered.imply(ent[g][d], cons, || format!("{} {} {}", show(g), show(d), show(p))) {
                    break 'outer;
                }
            }
        }
    }
    checks.push(ordered.done());

    let mut monoid = Tally::new("monoid-laws");
    let zero = th_zero(oracle.clone());
    'outer: for a in 0..n {
        let ta = th(&domain[a]);
        let id = th_eq(&th_add(&ta, &zero).expect("same oracle"), &ta).expect("same oracle");
        if !monoid.imply(Verdict::Holds, id, || format!("identity {}", show(a))) {
            break;
        }
        for b in 0..n {
            let tb = th(&domain[b]);
            let comm = th_eq(&th_add(&ta, &tb).expect("same oracle"), &th_add(&tb, &ta).expect("same oracle"));
            if !monoid.imply(Verdict::Holds, comm.expect("same oracle"), || format!("commutativity {} {}", show(a), show(b))) {
                break 'outer;
            }
            for c in 0..n {
                let left = memo.id(memo.items[sum2[a][b]].sum(&domain[c]));
                let right = memo.id(domain[a].sum(&memo.items[sum2[b][c]]));
                let assoc = memo.eqv(left, right);
                if !monoid.imply(Verdict::Holds, assoc, || format!("associativity {} {} {}", show(a), show(b), show(c))) {
                    break 'outer;
                }
            }
        }
    }
    checks.push(monoid.done());

    // Th(Γ) + Th(Δ) = Th(Γ ⊎ Δ) and Th([]) is the unit
    let mut hom = Tally::new("homomorphism");
    let unit = th_eq(&th(&Multiset::new()), &zero).expect("same oracle");
    hom.imply(Verdict::Holds, unit, || "[]".into());
    'outer: for g in 0..n {
        for d in 0..n {
            let sum = th_add(&th(&domain[g]), &th(&domain[d])).expect("same oracle");
            let via = memo.id(sum.generator);
            let direct = memo.eqv(via, sum2[g][d]);
            if !hom.imply(Verdict::Holds, direct, || format!("{} {}", show(g), show(d))) {
                break 'outer;
            }
        }
    }
    checks.push(hom.done());

    let mut antitone = Tally::new("antitone");
    'outer: for g in 0..n {
        for d in 0..n {
            let sub = Verdict::from_bool(members[d].subset(&members[g]));
            let ante = if known { ent[g][d] } else { ent[g][d].and(Verdict::Unknown) };
            if !antitone.imply(ante, sub, || format!("{} {}", show(g), show(d))) {
                break 'outer;
            }
        }
    }
    checks.push(antitone.done());

    // Γ ⊢ Δ, Δ ∈ Th(Γ), Th(Δ) ⊆ Th(Γ) by generators, and by domain members
    let mut agree = Tally::new("three-way-agreement");
    'outer: for g in 0..n {
        for d in 0..n {
            let (tg, td) = (th(&domain[g]), th(&domain[d]));
            let contains = th_contains(&tg, &domain[d]);
            let leq = th_leq(&td, &tg).expect("same oracle");
            let ext = Verdict::from_bool(members[d].subset(&members[g]));
            let same = ent[g][d] == contains && contains == leq && (!known || leq == ext);
            if !agree.imply(Verdict::Holds, Verdict::from_bool(same), || format!("{} {}", show(g), show(d))) {
                break 'outer;
            }
        }
    }
    checks.push(agree.done());

    let (oracle_monotone, th_monotone) = monotonicity_sides(&mut memo, domain, &idx, &sum2, &ent, &members);
    let mut iff = Tally::new("monotone-iff-th-monotone");
    iff.imply(Verdict::Holds, Verdict::from_bool(oracle_monotone == th_monotone), || {
        format!("oracle {oracle_monotone}, mapping {th_monotone}")
    });
    checks.push(iff.done());

    QuotientReport { checks, oracle_monotone, th_monotone }
}

/// Γ ⊢ Δ ⇒ Γ ⊎ Ψ ⊢ Δ, against Γ ≤ Γ′ ⇒ Th(Γ) ⊆ Th(Γ′) read on the domain.
fn monotonicity_sides(
    memo: &mut Memo<'_>,
    domain: &[Multiset],
    idx: &[usize],
    sum2: &[Vec<usize>],
    ent: &[Vec<Verdict>],
    members: &[Bits],
) -> (Verdict, Verdict) {
    let n = domain.len();
    let mut oracle_side = Verdict::Holds;
    'outer: for g in 0..n {
        for d in (0..n).filter(|&d| !ent[g][d].fails()) {
            for p in 0..n {
                let v = ent[g][d].not().or(memo.ent(sum2[g][p], idx[d]));
                oracle_side = oracle_side.and(v);
                if oracle_side.fails() {
                    break 'outer;
                }
            }
        }
    }
    let mut th_side = Verdict::Holds;
    'outer: for g in 0..n {
        for h in (0..n).filter(|&h| domain[g].is_submultiset(&domain[h])) {
            if !members[g].subset(&members[h]) {
                th_side = Verdict::Fails;
                break 'outer;
            }
        }
    }
    (oracle_side, th_side)
}

#[derive(Clone, Debug)]
pub struct UnionReport {
    pub verdict: Verdict,
    pub sets_checked: u64,
    pub witness: Option<String>,
    /// How the union of the theory was approximated.
    pub restriction: String,
}

/// For a monotone and contractive oracle, a finite set belongs to T iff it
/// is included in the union of T's members. Sets range over subsets of
/// `universe` with at most `max_size` elements, and so do the members
/// whose union is taken.
pub fn union_theory_check(t: &TheoryHandle, universe: &[Formula], max_size: usize) -> Result<UnionReport, TheoryError> {
    let dom = SampleDomain::new(universe.to_vec(), max_size);
    let subject = Subject::symmetric("theory", t.oracle.clone(), None);
    for law in [Law::Monotonicity, Law::Contraction] {
        match check_law_in(&subject, law, Form::Symmetric, &dom) {
            LawOutcome::Passed { .. } => {}
            LawOutcome::Counterexample(i) => return Err(TheoryError::Precondition(format!("{law} fails at {i}"))),
            LawOutcome::Inconclusive { .. } => return Err(TheoryError::Precondition(format!("{law} is undecided"))),
        }
    }
    let sets: Vec<Multiset> = SampleDomain::multisets_over(universe, max_size)
        .into_iter()
        .filter(|m| m.counts().all(|(_, &c)| c == 1))
        .collect();
    let mut union = std::collections::BTreeSet::new();
    let mut member = Vec::with_capacity(sets.len());
    for s in &sets {
        let v = th_contains(t, s);
        if v.holds() {
            union.extend(s.iter().cloned());
        }
        member.push(v);
    }
    let mut verdict = Verdict::Holds;
    let mut witness = None;
    for (s, v) in sets.iter().zip(&member) {
        let inside = Verdict::from_bool(s.iter().all(|f| union.contains(f)));
        let same = match (v, inside) {
            (Verdict::Unknown, _) => Verdict::Unknown,
            (v, i) => Verdict::from_bool(*v == i),
        };
        verdict = verdict.and(same);
        if verdict.fails() {
            witness = Some(s.to_string());
            break;
        }
    }
    Ok(UnionReport {
        verdict,
        sets_checked: sets.len() as u64,
        witness,
        restriction: format!("union over members that are sets of at most {max_size} of {} formulas", universe.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{AbelianSymmetric, DesignationPreserving};
    use crate::syntax::parse_multiset;

    fn ms(s: &str) -> Multiset {
        parse_multiset(s).unwrap()
    }

    fn abelian() -> SharedOracle {
        Arc::new(AbelianSymmetric::default())
    }

    #[test]
    fn membership() {
        let o = abelian();
        assert!(th_contains(&TheoryHandle::new(o.clone(), ms("[1, 2]")), &ms("[3]")).holds());
        assert!(th_contains(&TheoryHandle::new(o.clone(), ms("[1, 2]")), &ms("[1, 2]")).holds());
        assert!(th_contains(&TheoryHandle::new(o, ms("[1]")), &Multiset::new()).fails());
    }

    #[test]
    fn sum_and_equality() {
        let o = abelian();
        let t = |s: &str| TheoryHandle::new(o.clone(), ms(s));
        assert_eq!(th_add(&t("[1]"), &t("[2]")).unwrap().generator, ms("[1, 2]"));
        assert!(th_eq(&t("[1, 1]"), &t("[2]")).unwrap().holds());
        assert!(th_eq(&th_add(&t("[1, 1]"), &t("[-3]")).unwrap(), &th_add(&t("[2]"), &t("[-3]")).unwrap()).unwrap().holds());
        assert!(th_eq(&th_add(&t("[5]"), &th_zero(o.clone())).unwrap(), &t("[5]")).unwrap().holds());
        assert!(th_leq(&t("[3]"), &t("[1, 2]")).unwrap().holds());
        assert!(th_leq(&t("[0]"), &t("[1]")).unwrap().fails());
    }

    #[test]
    fn mismatched_oracles() {
        let t = TheoryHandle::new(abelian(), ms("[1]"));
        let s = TheoryHandle::new(abelian(), ms("[1]"));
        assert_eq!(th_add(&t, &s).unwrap_err(), TheoryError::OracleMismatch);
        assert_eq!(th_eq(&t, &s).unwrap_err(), TheoryError::OracleMismatch);
        assert!(th_eq(&t, &t.clone()).unwrap().holds());
    }

    #[test]
    fn small_quotient() {
        let dom = SampleDomain::numerals(-1, 1, 2).multisets();
        let r = quotient_check(&abelian(), &dom);
        assert!(r.all_pass(), "{:#?}", r.checks);
        assert!(r.oracle_monotone.fails());
        assert!(r.th_monotone.fails());
        let r = quotient_check(&(Arc::new(DesignationPreserving::default()) as SharedOracle), &dom);
        assert!(r.all_pass(), "{:#?}", r.checks);
        assert!(r.oracle_monotone.holds() && r.th_monotone.holds());
    }

    #[test]
    fn union_needs_contraction() {
        let t = TheoryHandle::new(abelian(), ms("[1]"));
        let u: Vec<Formula> = (-1..=1).map(crate::syntax::numeral).collect();
        assert!(matches!(union_theory_check(&t, &u, 2), Err(TheoryError::Precondition(_))));
        let d: SharedOracle = Arc::new(DesignationPreserving::default());
        let r = union_theory_check(&TheoryHandle::new(d, ms("[1, 0]")), &u, 3).unwrap();
        assert!(r.verdict.holds(), "{r:?}");
    }
}
