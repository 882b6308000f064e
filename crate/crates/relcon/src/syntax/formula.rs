use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Name = Arc<str>;

/// Formulas and schemata share one tree type; a schema is a formula that may
/// contain `Meta` leaves. Object formulas never do.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Name),
    Meta(Name),
    /// The constant 0̄.
    Zero,
    /// The constant 1̄.
    One,
    /// The constant t.
    Unit,
    Not(Arc<Formula>),
    Fusion(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

/// A binding of metavariables to object formulas.
pub type Assignment = BTreeMap<Name, Formula>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("metavariable `{0}` has no binding")]
pub struct MissingBinding(pub Name);

/// Connective symbols, used by matrices and by search to grow candidate pools.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Zero,
    One,
    Unit,
    Not,
    Fusion,
    And,
    Or,
    Imp,
}

impl Connective {
    pub fn arity(self) -> usize {
        match self {
            Connective::Zero | Connective::One | Connective::Unit => 0,
            Connective::Not => 1,
            _ => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Zero => "0",
            Connective::One => "1",
            Connective::Unit => "t",
            Connective::Not => "~",
            Connective::Fusion => "o",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Connective> {
        Some(match s {
            "0" => Connective::Zero,
            "1" => Connective::One,
            "t" => Connective::Unit,
            "~" | "¬" => Connective::Not,
            "o" | "∘" | "*" => Connective::Fusion,
            "&" | "∧" => Connective::And,
            "|" | "∨" => Connective::Or,
            "->" | "→" => Connective::Imp,
            _ => return None,
        })
    }
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.into())
}

pub fn meta(name: &str) -> Formula {
    Formula::Meta(name.into())
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Imp(Arc::new(a), Arc::new(b))
}

pub fn fusion(a: Formula, b: Formula) -> Formula {
    Formula::Fusion(Arc::new(a), Arc::new(b))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Arc::new(a), Arc::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Arc::new(a), Arc::new(b))
}

pub fn not(a: Formula) -> Formula {
    Formula::Not(Arc::new(a))
}

/// The numeral n̄: 0̄, 1̄, then n̄∘1̄ for n+1, and ¬n̄ for −n.
pub fn numeral(n: i64) -> Formula {
    match n {
        0 => Formula::Zero,
        1 => Formula::One,
        n if n < 0 => not(numeral(-n)),
        n => fusion(numeral(n - 1), Formula::One),
    }
}

impl Formula {
    pub fn connective(&self) -> Option<Connective> {
        Some(match self {
            Formula::Atom(_) | Formula::Meta(_) => return None,
            Formula::Zero => Connective::Zero,
            Formula::One => Connective::One,
            Formula::Unit => Connective::Unit,
            Formula::Not(_) => Connective::Not,
            Formula::Fusion(..) => Connective::Fusion,
            Formula::And(..) => Connective::And,
            Formula::Or(..) => Connective::Or,
            Formula::Imp(..) => Connective::Imp,
        })
    }

    pub fn build(c: Connective, args: &[Formula]) -> Formula {
        let arg = |i: usize| Arc::new(args[i].clone());
        match c {
            Connective::Zero => Formula::Zero,
            Connective::One => Formula::One,
            Connective::Unit => Formula::Unit,
            Connective::Not => Formula::Not(arg(0)),
            Connective::Fusion => Formula::Fusion(arg(0), arg(1)),
            Connective::And => Formula::And(arg(0), arg(1)),
            Connective::Or => Formula::Or(arg(0), arg(1)),
            Connective::Imp => Formula::Imp(arg(0), arg(1)),
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Not(a) => vec![a],
            Formula::Fusion(a, b) | Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                vec![a, b]
            }
            _ => vec![],
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Meta(_) => false,
            _ => self.children().iter().all(|c| c.is_ground()),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn metas(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Meta(a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Some(c) = f.connective() {
                out.insert(c);
            }
        });
        out
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            out.insert(f.clone());
        });
        out
    }

    fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    /// The integer n when this is exactly the expansion of the numeral n ≥ 0.
    pub fn as_numeral(&self) -> Option<i64> {
        match self {
            Formula::Zero => Some(0),
            Formula::One => Some(1),
            Formula::Fusion(a, b) if **b == Formula::One => match a.as_numeral() {
                Some(k) if k >= 1 => Some(k + 1),
                _ => None,
            },
            _ => None,
        }
    }

    /// Homomorphic replacement of metavariables.
    pub fn substitute(&self, sigma: &Assignment) -> Result<Formula, MissingBinding> {
        Ok(match self {
            Formula::Meta(m) => sigma.get(m).cloned().ok_or_else(|| MissingBinding(m.clone()))?,
            Formula::Atom(_) | Formula::Zero | Formula::One | Formula::Unit => self.clone(),
            Formula::Not(a) => not(a.substitute(sigma)?),
            Formula::Fusion(a, b) => fusion(a.substitute(sigma)?, b.substitute(sigma)?),
            Formula::And(a, b) => and(a.substitute(sigma)?, b.substitute(sigma)?),
            Formula::Or(a, b) => or(a.substitute(sigma)?, b.substitute(sigma)?),
            Formula::Imp(a, b) => imp(a.substitute(sigma)?, b.substitute(sigma)?),
        })
    }

    /// Matches this schema against a ground formula.
    pub fn matches(&self, f: &Formula) -> Option<Assignment> {
        let mut sigma = Assignment::new();
        self.match_into(f, &mut sigma).then_some(sigma)
    }

    /// Extends `sigma` so that this schema instantiates to `f`. On failure
    /// `sigma` may hold partial bindings; callers that backtrack pass a copy.
    pub fn match_into(&self, f: &Formula, sigma: &mut Assignment) -> bool {
        match (self, f) {
            (Formula::Meta(m), _) => match sigma.get(m) {
                Some(bound) => bound == f,
                None => {
                    sigma.insert(m.clone(), f.clone());
                    true
                }
            },
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::Zero, Formula::Zero)
            | (Formula::One, Formula::One)
            | (Formula::Unit, Formula::Unit) => true,
            (Formula::Not(a), Formula::Not(b)) => a.match_into(b, sigma),
            (Formula::Fusion(a1, a2), Formula::Fusion(b1, b2))
            | (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
                a1.match_into(b1, sigma) && a2.match_into(b2, sigma)
            }
            _ => false,
        }
    }

    /// Renames metavariables to `m0, m1, ...` in first-occurrence order.
    pub fn canonical_metas(&self, names: &mut BTreeMap<Name, Name>) -> Formula {
        match self {
            Formula::Meta(m) => {
                let n = names.len();
                let fresh = names.entry(m.clone()).or_insert_with(|| format!("m{n}").into());
                Formula::Meta(fresh.clone())
            }
            Formula::Atom(_) | Formula::Zero | Formula::One | Formula::Unit => self.clone(),
            _ => {
                let args: Vec<Formula> =
                    self.children().into_iter().map(|c| c.canonical_metas(names)).collect();
                Formula::build(self.connective().expect("compound"), &args)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Fusion(..) if self.as_numeral().is_none() => 4,
            Formula::Not(a) if a.as_numeral().map_or(true, |n| n < 1) => 5,
            _ => 6,
        }
    }
}

/// Matches schemas against targets as multisets: each schema is paired with a
/// distinct target. Calls `found` for each assignment until it returns true.
pub fn match_multiset(
    schemas: &[Formula],
    targets: &[Formula],
    sigma: &Assignment,
    found: &mut dyn FnMut(&Assignment) -> bool,
) -> bool {
    if schemas.len() != targets.len() {
        return false;
    }
    let mut used = vec![false; targets.len()];
    match_rest(schemas, targets, &mut used, sigma, found)
}

fn match_rest(
    schemas: &[Formula],
    targets: &[Formula],
    used: &mut [bool],
    sigma: &Assignment,
    found: &mut dyn FnMut(&Assignment) -> bool,
) -> bool {
    let Some((s, rest)) = schemas.split_first() else {
        return found(sigma);
    };
    for j in 0..targets.len() {
        // identical targets give identical branches
        if used[j] || (0..j).any(|i| !used[i] && targets[i] == targets[j]) {
            continue;
        }
        let mut next = sigma.clone();
        if s.match_into(&targets[j], &mut next) {
            used[j] = true;
            let stop = match_rest(rest, targets, used, &next, found);
            used[j] = false;
            if stop {
                return true;
            }
        }
    }
    false
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool| {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        let p = self.precedence();
        match self {
            Formula::Atom(a) | Formula::Meta(a) => f.write_str(a),
            Formula::Unit => f.write_str("t"),
            Formula::Zero | Formula::One => unreachable!("numerals print above"),
            Formula::Not(a) => match a.as_numeral() {
                Some(n) if n >= 1 => write!(f, "-{n}"),
                _ => {
                    f.write_str("~")?;
                    child(f, a, a.precedence() < 5)
                }
            },
            Formula::Imp(a, b) => {
                child(f, a, a.precedence() <= p)?;
                f.write_str(" -> ")?;
                child(f, b, b.precedence() < p)
            }
            Formula::Fusion(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                let op = self.connective().expect("binary").symbol();
                child(f, a, a.precedence() < p)?;
                write!(f, " {op} ")?;
                child(f, b, b.precedence() <= p)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        meta("p")
    }

    #[test]
    fn numerals_expand() {
        assert_eq!(numeral(2), fusion(Formula::One, Formula::One));
        assert_eq!(numeral(-3), not(numeral(3)));
        assert_eq!(numeral(3).as_numeral(), Some(3));
        assert_eq!(fusion(Formula::One, numeral(2)).as_numeral(), None);
    }

    #[test]
    fn substitute_examples() {
        let sigma: Assignment = [("p".into(), atom("a"))].into_iter().collect();
        assert_eq!(imp(p(), p()).substitute(&sigma).unwrap(), imp(atom("a"), atom("a")));
        let c = imp(
            imp(meta("p"), imp(meta("q"), meta("r"))),
            imp(meta("q"), imp(meta("p"), meta("r"))),
        );
        let all_p: Assignment =
            ["p", "q", "r"].iter().map(|m| (Name::from(*m), atom("p"))).collect();
        let pp = imp(atom("p"), imp(atom("p"), atom("p")));
        assert_eq!(c.substitute(&all_p).unwrap(), imp(pp.clone(), pp));
        assert_eq!(meta("q").substitute(&sigma), Err(MissingBinding("q".into())));
    }

    #[test]
    fn match_examples() {
        let pp = imp(p(), p());
        assert_eq!(pp.matches(&imp(atom("a"), atom("a"))).unwrap()[&Name::from("p")], atom("a"));
        assert!(pp.matches(&imp(atom("a"), atom("b"))).is_none());
        let s = imp(meta("f"), imp(meta("g"), meta("h")));
        let ab = fusion(atom("a"), atom("b"));
        let sigma = s.matches(&imp(ab.clone(), imp(atom("b"), atom("a")))).unwrap();
        assert_eq!(sigma[&Name::from("f")], ab);
        assert_eq!(sigma[&Name::from("g")], atom("b"));
        assert_eq!(sigma[&Name::from("h")], atom("a"));
    }

    #[test]
    fn multiset_matching_binds_shared_metas() {
        let mp = [imp(meta("p"), meta("q")), meta("p")];
        let targets = [atom("a"), imp(atom("a"), atom("b"))];
        let mut hits = vec![];
        match_multiset(&mp, &targets, &Assignment::new(), &mut |s| {
            hits.push(s.clone());
            false
        });
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0][&Name::from("q")], atom("b"));
    }

    #[test]
    fn canonical_metas_identify_alpha_variants() {
        let a = imp(meta("x"), imp(meta("y"), meta("x")));
        let b = imp(meta("p"), imp(meta("q"), meta("p")));
        assert_eq!(
            a.canonical_metas(&mut BTreeMap::new()),
            b.canonical_metas(&mut BTreeMap::new())
        );
    }
}
