//! Abelian logic over the integers: ∘ is +, ¬ is negation, φ→ψ is ψ−φ, ∧ and
//! ∨ are min and max, 0̄ and 1̄ are 0 and 1.

use std::collections::{BTreeMap, BTreeSet};

use super::SemanticsError;
use crate::oracle::{ConsequenceOracle, SymmetricOracle, Verdict};
use crate::syntax::{Formula, Multiset, Name};

pub type IntValuation = BTreeMap<Name, i64>;

/// Default grid radius for refutation outside the linear fragment.
pub const DEFAULT_GRID: i64 = 8;
/// Grids with more points than this are not attempted.
const MAX_GRID_POINTS: u64 = 2_000_000;

/// Σ coeffs·atoms + constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: BTreeMap<Name, i64>,
    pub constant: i64,
}

impl LinearForm {
    fn atom(a: &Name) -> Self {
        LinearForm { coeffs: [(a.clone(), 1)].into_iter().collect(), constant: 0 }
    }

    pub fn add(&self, other: &LinearForm) -> Result<LinearForm, SemanticsError> {
        let mut out = self.clone();
        for (a, &c) in &other.coeffs {
            let e = out.coeffs.entry(a.clone()).or_insert(0);
            *e = e.checked_add(c).ok_or(SemanticsError::Overflow)?;
        }
        out.coeffs.retain(|_, c| *c != 0);
        out.constant = out.constant.checked_add(other.constant).ok_or(SemanticsError::Overflow)?;
        Ok(out)
    }

    pub fn neg(&self) -> Result<LinearForm, SemanticsError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, &c)| c.checked_neg().map(|n| (a.clone(), n)).ok_or(SemanticsError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(LinearForm { coeffs, constant: self.constant.checked_neg().ok_or(SemanticsError::Overflow)? })
    }

    /// The normal form, or `None` when the formula uses ∧ or ∨.
    pub fn of(f: &Formula) -> Result<Option<LinearForm>, SemanticsError> {
        Ok(Some(match f {
            Formula::Atom(a) => LinearForm::atom(a),
            Formula::Zero => LinearForm::default(),
            Formula::One => LinearForm { constant: 1, ..Default::default() },
            Formula::Not(a) => match LinearForm::of(a)? {
                Some(l) => l.neg()?,
                None => return Ok(None),
            },
            Formula::Fusion(a, b) | Formula::Imp(a, b) => {
                let (Some(la), Some(lb)) = (LinearForm::of(a)?, LinearForm::of(b)?) else {
                    return Ok(None);
                };
                if matches!(f, Formula::Imp(..)) {
                    lb.add(&la.neg()?)?
                } else {
                    la.add(&lb)?
                }
            }
            Formula::And(..) | Formula::Or(..) => {
                // still reject unsupported leaves below
                eval_int(f, &IntValuation::new()).map(|_| ()).or_else(|e| match e {
                    SemanticsError::MissingAtom(_) => Ok(()),
                    e => Err(e),
                })?;
                return Ok(None);
            }
            Formula::Unit => return Err(SemanticsError::Unsupported("t has no integer reading".into())),
            Formula::Meta(m) => return Err(SemanticsError::Unsupported(format!("metavariable `{m}`"))),
        }))
    }

    pub fn sum<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Result<Option<LinearForm>, SemanticsError> {
        let mut acc = LinearForm::default();
        for f in fs {
            match LinearForm::of(f)? {
                Some(l) => acc = acc.add(&l)?,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

pub fn eval_int(f: &Formula, v: &IntValuation) -> Result<i64, SemanticsError> {
    let ov = SemanticsError::Overflow;
    Ok(match f {
        Formula::Atom(a) => *v.get(a).ok_or_else(|| SemanticsError::MissingAtom(a.to_string()))?,
        Formula::Zero => 0,
        Formula::One => 1,
        Formula::Not(a) => eval_int(a, v)?.checked_neg().ok_or(ov)?,
        Formula::Fusion(a, b) => eval_int(a, v)?.checked_add(eval_int(b, v)?).ok_or(ov)?,
        Formula::Imp(a, b) => eval_int(b, v)?.checked_sub(eval_int(a, v)?).ok_or(ov)?,
        Formula::And(a, b) => eval_int(a, v)?.min(eval_int(b, v)?),
        Formula::Or(a, b) => eval_int(a, v)?.max(eval_int(b, v)?),
        Formula::Unit => return Err(SemanticsError::Unsupported("t has no integer reading".into())),
        Formula::Meta(m) => return Err(SemanticsError::Unsupported(format!("metavariable `{m}`"))),
    })
}

fn sum_at<'a>(fs: impl IntoIterator<Item = &'a Formula>, v: &IntValuation) -> Result<i64, SemanticsError> {
    fs.into_iter().try_fold(0i64, |acc, f| acc.checked_add(eval_int(f, v)?).ok_or(SemanticsError::Overflow))
}

/// `None` stands for +∞, the minimum of nothing.
fn min_at<'a>(fs: impl IntoIterator<Item = &'a Formula>, v: &IntValuation) -> Result<Option<i64>, SemanticsError> {
    let mut acc: Option<i64> = None;
    for f in fs {
        let x = eval_int(f, v)?;
        acc = Some(acc.map_or(x, |a| a.min(x)));
    }
    Ok(acc)
}

/// Checks `holds_at` on every valuation of `atoms` over [−radius, radius].
/// `Some(Some(v))` carries the least failing valuation, `Some(None)` means the
/// grid was exhausted, and `None` means the grid is too large to try.
pub fn grid_refute(
    atoms: &BTreeSet<Name>,
    radius: i64,
    mut holds_at: impl FnMut(&IntValuation) -> Result<bool, SemanticsError>,
) -> Result<Option<Option<IntValuation>>, SemanticsError> {
    let atoms: Vec<Name> = atoms.iter().cloned().collect();
    let width = (2 * radius + 1) as u64;
    let points = width.checked_pow(atoms.len() as u32);
    if points.map_or(true, |p| p > MAX_GRID_POINTS) {
        return Ok(None);
    }
    let mut digits = vec![-radius; atoms.len()];
    loop {
        let v: IntValuation = atoms.iter().cloned().zip(digits.iter().copied()).collect();
        if !holds_at(&v)? {
            return Ok(Some(Some(v)));
        }
        let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] < radius) else {
            return Ok(Some(None));
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = -radius;
        }
    }
}

fn atoms_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Name> {
    fs.into_iter().flat_map(|f| f.atoms()).collect()
}

fn grid_verdict(
    atoms: &BTreeSet<Name>,
    radius: i64,
    holds_at: impl FnMut(&IntValuation) -> Result<bool, SemanticsError>,
) -> Result<Verdict, SemanticsError> {
    Ok(match grid_refute(atoms, radius, holds_at)? {
        Some(Some(_)) => Verdict::Fails,
        // exhaustion of a grid proves nothing for open formulas
        Some(None) if !atoms.is_empty() => Verdict::Unknown,
        Some(None) => Verdict::Holds,
        None => Verdict::Unknown,
    })
}

/// Compares two linear forms for `lhs ≤ rhs` at every valuation.
fn linear_leq(lhs: &LinearForm, rhs: &LinearForm) -> Verdict {
    Verdict::from_bool(lhs.coeffs == rhs.coeffs && lhs.constant <= rhs.constant)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbelianKind {
    /// 0 ≤ min Γ implies 0 ≤ φ.
    P,
    /// min Γ ≤ φ.
    Leq,
    /// Σ Γ ≤ φ.
    Z,
}

pub fn abelian_oracle(kind: AbelianKind, premises: &Multiset, goal: &Formula, radius: i64) -> Result<Verdict, SemanticsError> {
    let all = || premises.iter().chain([goal]);
    match kind {
        AbelianKind::Z => match (LinearForm::sum(premises.iter())?, LinearForm::of(goal)?) {
            (Some(l), Some(r)) => Ok(linear_leq(&l, &r)),
            _ => grid_verdict(&atoms_of(all()), radius, |v| Ok(sum_at(premises.iter(), v)? <= eval_int(goal, v)?)),
        },
        AbelianKind::P => grid_verdict(&atoms_of(all()), radius, |v| {
            let antecedent = min_at(premises.iter(), v)?.map_or(true, |m| m >= 0);
            Ok(!antecedent || eval_int(goal, v)? >= 0)
        }),
        AbelianKind::Leq => grid_verdict(&atoms_of(all()), radius, |v| {
            let g = eval_int(goal, v)?;
            Ok(min_at(premises.iter(), v)?.is_some_and(|m| m <= g))
        }),
    }
}

/// Σ Γ ≤ Σ Δ with empty sums read as 0.
pub fn abelian_symmetric(premises: &Multiset, conclusions: &Multiset, radius: i64) -> Result<Verdict, SemanticsError> {
    match (LinearForm::sum(premises.iter())?, LinearForm::sum(conclusions.iter())?) {
        (Some(l), Some(r)) => Ok(linear_leq(&l, &r)),
        _ => grid_verdict(&atoms_of(premises.iter().chain(conclusions.iter())), radius, |v| {
            Ok(sum_at(premises.iter(), v)? <= sum_at(conclusions.iter(), v)?)
        }),
    }
}

/// One of the three single-conclusion relations; errors read as unknown.
#[derive(Clone, Copy, Debug)]
pub struct AbelianOracle {
    pub kind: AbelianKind,
    pub radius: i64,
}

impl AbelianOracle {
    pub fn new(kind: AbelianKind) -> Self {
        AbelianOracle { kind, radius: DEFAULT_GRID }
    }
}

impl ConsequenceOracle for AbelianOracle {
    fn entails(&self, premises: &Multiset, conclusion: &Formula) -> Verdict {
        abelian_oracle(self.kind, premises, conclusion, self.radius).unwrap_or(Verdict::Unknown)
    }

    fn theorem_basis(&self) -> Option<Vec<Formula>> {
        // min of nothing is +∞, so ⊢≤ has no theorems
        (self.kind == AbelianKind::Leq).then(Vec::new)
    }

    fn entails_every_theorem(&self, premises: &Multiset) -> Verdict {
        match self.kind {
            // 0̄ is the least theorem value: Γ entails all theorems iff Γ ⊢ 0̄
            AbelianKind::Z => self.entails(premises, &Formula::Zero),
            // theorems are everywhere ≥ 0, so the consequent always holds
            AbelianKind::P => Verdict::Holds,
            AbelianKind::Leq => Verdict::Holds,
        }
    }
}

/// The sum relation on multisets of conclusions.
#[derive(Clone, Copy, Debug)]
pub struct AbelianSymmetric {
    pub radius: i64,
}

impl Default for AbelianSymmetric {
    fn default() -> Self {
        AbelianSymmetric { radius: DEFAULT_GRID }
    }
}

impl SymmetricOracle for AbelianSymmetric {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        abelian_symmetric(premises, conclusions, self.radius).unwrap_or(Verdict::Unknown)
    }
}

/// The Tarskian reading of designation: if every premise is ≥ 0 then every
/// conclusion is ≥ 0.
#[derive(Clone, Copy, Debug)]
pub struct DesignationPreserving {
    pub radius: i64,
}

impl Default for DesignationPreserving {
    fn default() -> Self {
        DesignationPreserving { radius: DEFAULT_GRID }
    }
}

impl SymmetricOracle for DesignationPreserving {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        let atoms = atoms_of(premises.iter().chain(conclusions.iter()));
        grid_verdict(&atoms, self.radius, |v| {
            let antecedent = min_at(premises.iter(), v)?.map_or(true, |m| m >= 0);
            let consequent = min_at(conclusions.iter(), v)?.map_or(true, |m| m >= 0);
            Ok(!antecedent || consequent)
        })
        .unwrap_or(Verdict::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{numeral, parse_formula, parse_multiset};
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn ms(s: &str) -> Multiset {
        parse_multiset(s).unwrap()
    }

    fn z(g: &str, c: &str) -> Verdict {
        abelian_oracle(AbelianKind::Z, &ms(g), &f(c), DEFAULT_GRID).unwrap()
    }

    #[test]
    fn z_fixtures() {
        assert_eq!(z("[1]", "1"), Verdict::Holds);
        assert_eq!(z("[1, 1]", "1"), Verdict::Fails);
        assert_eq!(z("[]", "0"), Verdict::Holds);
        assert_eq!(z("[1]", "0"), Verdict::Fails);
        assert_eq!(z("[a -> b, a]", "b"), Verdict::Holds);
        assert_eq!(z("[a, a]", "a"), Verdict::Fails);
    }

    #[test]
    fn p_and_leq_fixtures() {
        let p = |g: &str, c: &str| abelian_oracle(AbelianKind::P, &ms(g), &f(c), DEFAULT_GRID).unwrap();
        assert_eq!(p("[1, 2]", "1"), Verdict::Holds);
        assert_eq!(p("[1]", "2 -> 1"), Verdict::Fails);
        let leq = abelian_oracle(AbelianKind::Leq, &ms("[-1 -> -2, -1]"), &f("-2"), DEFAULT_GRID).unwrap();
        assert_eq!(leq, Verdict::Fails);
        // the witness printed with 1 in place of ¬1̄ is not a counterexample
        let printed = abelian_oracle(AbelianKind::Leq, &ms("[1 -> -2, 1]"), &f("-2"), DEFAULT_GRID).unwrap();
        assert_eq!(printed, Verdict::Holds);
    }

    #[test]
    fn lattice_connectives_use_the_grid() {
        assert_eq!(z("[a & b]", "a"), Verdict::Unknown);
        assert_eq!(z("[a | b]", "a"), Verdict::Fails);
        assert_eq!(z("[1 & 2]", "1"), Verdict::Holds);
    }

    #[test]
    fn symmetric_fixtures() {
        let s = |g: &str, d: &str| abelian_symmetric(&ms(g), &ms(d), DEFAULT_GRID).unwrap();
        assert_eq!(s("[]", "[1, -1]"), Verdict::Holds);
        assert_eq!(s("[1, 1]", "[2]"), Verdict::Holds);
        assert_eq!(s("[2]", "[1, 1]"), Verdict::Holds);
        assert_eq!(s("[1]", "[]"), Verdict::Fails);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = LinearForm { constant: i64::MAX, ..Default::default() };
        assert_eq!(big.add(&big), Err(SemanticsError::Overflow));
        let v: IntValuation = [("a".into(), i64::MAX)].into_iter().collect();
        assert_eq!(eval_int(&f("a o a"), &v), Err(SemanticsError::Overflow));
    }

    #[test]
    fn unit_is_unsupported() {
        assert!(matches!(
            abelian_oracle(AbelianKind::Z, &Multiset::new(), &Formula::Unit, 8),
            Err(SemanticsError::Unsupported(_))
        ));
        assert_eq!(AbelianOracle::new(AbelianKind::Z).entails(&Multiset::new(), &Formula::Unit), Verdict::Unknown);
    }

    fn arb_linear() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["a", "b"]).prop_map(crate::syntax::atom),
            (-3i64..4).prop_map(numeral),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(crate::syntax::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| crate::syntax::imp(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| crate::syntax::fusion(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn deduction_property(g in prop::collection::vec(arb_linear(), 0..3), phi in arb_linear(), psi in arb_linear()) {
            let gamma: Multiset = g.into_iter().collect();
            let mut with = gamma.clone();
            with.insert(phi.clone());
            let lhs = abelian_oracle(AbelianKind::Z, &with, &psi, 8).unwrap();
            let rhs = abelian_oracle(AbelianKind::Z, &gamma, &crate::syntax::imp(phi, psi), 8).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn linear_decision_never_contradicts_grid(g in prop::collection::vec(arb_linear(), 0..3), psi in arb_linear()) {
            let gamma: Multiset = g.into_iter().collect();
            let exact = abelian_oracle(AbelianKind::Z, &gamma, &psi, 8).unwrap();
            let atoms = atoms_of(gamma.iter().chain([&psi]));
            let refuted = grid_refute(&atoms, 3, |v| Ok(sum_at(gamma.iter(), v)? <= eval_int(&psi, v)?)).unwrap();
            if let Some(Some(_)) = refuted {
                prop_assert_eq!(exact, Verdict::Fails);
            }
        }
    }
}
