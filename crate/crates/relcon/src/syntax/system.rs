//! Axiomatic systems: named consecution schemata read from line-oriented files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::{match_multiset, Assignment, Connective, Formula, Name};
use super::parse::{IdentMode, ParseError, Parser, Tok};
use crate::multiset::FMultiset;

/// A ground consecution Γ ▷ Δ. Single-conclusion consecutions have |Δ| = 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Consecution {
    pub left: FMultiset<Formula>,
    pub right: FMultiset<Formula>,
}

impl Consecution {
    pub fn is_axiom(&self) -> bool {
        self.left.is_empty()
    }
}

/// A named consecution schema. Axioms are the rules with no premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: Name,
    pub premises: Vec<Formula>,
    pub conclusions: Vec<Formula>,
}

impl Rule {
    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }

    /// The single conclusion schema, if there is exactly one.
    pub fn conclusion(&self) -> Option<&Formula> {
        match self.conclusions.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    pub fn metas(&self) -> BTreeSet<Name> {
        self.premises.iter().chain(&self.conclusions).flat_map(|f| f.metas()).collect()
    }

    pub fn instantiate(&self, sigma: &Assignment) -> Option<Consecution> {
        let inst = |fs: &[Formula]| -> Option<FMultiset<Formula>> {
            fs.iter().map(|f| f.substitute(sigma).ok()).collect()
        };
        Some(Consecution { left: inst(&self.premises)?, right: inst(&self.conclusions)? })
    }

    /// Finds σ with σ(premises) = `left` and σ(conclusions) = `right` as
    /// multisets. A supplied σ is checked instead of searched for.
    pub fn match_instance(
        &self,
        left: &[Formula],
        right: &[Formula],
        stored: Option<&Assignment>,
    ) -> Option<Assignment> {
        if let Some(sigma) = stored {
            let c = self.instantiate(sigma)?;
            let same = c.left == left.iter().cloned().collect()
                && c.right == right.iter().cloned().collect();
            return same.then(|| sigma.clone());
        }
        let mut out = None;
        match_multiset(&self.conclusions, right, &Assignment::new(), &mut |s| {
            match_multiset(&self.premises, left, s, &mut |full| {
                out = Some(full.clone());
                true
            })
        });
        out
    }

    /// Alpha-normal form, used to recognise standard axiom shapes by structure.
    pub fn shape(&self) -> (Vec<Formula>, Vec<Formula>) {
        let mut names = BTreeMap::new();
        let conclusions = self.conclusions.iter().map(|f| f.canonical_metas(&mut names)).collect();
        let premises = self.premises.iter().map(|f| f.canonical_metas(&mut names)).collect();
        (premises, conclusions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomaticSystem {
    pub name: String,
    pub symmetric: bool,
    pub atoms: BTreeSet<Name>,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("duplicate rule name `{0}`")]
    DuplicateRule(String),
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

impl AxiomaticSystem {
    pub fn new(name: impl Into<String>, rules: Vec<Rule>) -> Result<Self, SystemError> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.name.clone()) {
                return Err(SystemError::DuplicateRule(r.name.to_string()));
            }
        }
        let symmetric = rules.iter().any(|r| r.conclusions.len() != 1);
        Ok(AxiomaticSystem { name: name.into(), symmetric, atoms: BTreeSet::new(), rules })
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| &*r.name == name)
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.is_axiom())
    }

    pub fn proper_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| !r.is_axiom())
    }

    /// Whether `f` instantiates some single-conclusion axiom.
    pub fn is_axiom(&self, f: &Formula) -> bool {
        self.axiom_for(f).is_some()
    }

    pub fn axiom_for(&self, f: &Formula) -> Option<(&Rule, Assignment)> {
        self.axioms()
            .filter_map(|r| Some((r, r.conclusion()?.matches(f)?)))
            .next()
    }

    /// Connectives used by any schema.
    pub fn connectives(&self) -> BTreeSet<Connective> {
        self.rules
            .iter()
            .flat_map(|r| r.premises.iter().chain(&r.conclusions))
            .flat_map(|f| f.connectives())
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self, SystemError> {
        let mut name = None;
        let mut symmetric = false;
        let mut atoms = BTreeSet::new();
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let invalid = |message: String| SystemError::Invalid { line, message };
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            match keyword {
                "system" => {
                    let mut words = rest.split_whitespace();
                    name = Some(words.next().ok_or_else(|| invalid("missing system name".into()))?);
                    match words.next() {
                        None => {}
                        Some("symmetric") => symmetric = true,
                        Some(w) => return Err(invalid(format!("unexpected `{w}`"))),
                    }
                }
                "atoms" => atoms.extend(rest.split_whitespace().map(Name::from)),
                "axiom" | "rule" => {
                    let (rname, body) = rest
                        .split_once(':')
                        .ok_or_else(|| invalid("expected `name : consecution`".into()))?;
                    let rname = rname.trim();
                    if rname.is_empty() || rname.contains(char::is_whitespace) {
                        return Err(invalid(format!("bad rule name `{rname}`")));
                    }
                    let mode = IdentMode::Schema { atoms: atoms.clone() };
                    let offset = raw.find(':').unwrap_or(0) + 1;
                    let mut p = Parser::new(&body, line, &mode).map_err(|e| shift(e, offset))?;
                    let parsed = consecution(&mut p, keyword == "axiom");
                    let (premises, conclusions) = parsed.map_err(|e| shift(e, offset))?;
                    rules.push(Rule { name: rname.into(), premises, conclusions });
                }
                w => return Err(invalid(format!("unknown keyword `{w}`"))),
            }
        }
        let name = name.ok_or(SystemError::Invalid { line: 1, message: "missing `system` line".into() })?;
        let mut sys = AxiomaticSystem::new(name, rules)?;
        sys.symmetric |= symmetric;
        sys.atoms = atoms;
        Ok(sys)
    }
}

fn shift(mut e: ParseError, offset: usize) -> ParseError {
    e.column += offset;
    e
}

fn consecution(p: &mut Parser<'_>, axiom: bool) -> Result<(Vec<Formula>, Vec<Formula>), ParseError> {
    let first = p.formula_list(&[Tok::Turnstile, Tok::End])?;
    let out = if *p.peek() == Tok::Turnstile {
        p.bump();
        if axiom && !first.is_empty() {
            return Err(p.error("axioms take no premises"));
        }
        (first, p.formula_list(&[Tok::End])?)
    } else if axiom {
        (vec![], first)
    } else {
        return Err(p.error("expected `|-`"));
    };
    p.finish()?;
    Ok(out)
}

fn join(fs: &[Formula]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for AxiomaticSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "system {}", self.name)?;
        if self.symmetric {
            f.write_str(" symmetric")?;
        }
        writeln!(f)?;
        if !self.atoms.is_empty() {
            let atoms: Vec<&str> = self.atoms.iter().map(|a| &**a).collect();
            writeln!(f, "atoms {}", atoms.join(" "))?;
        }
        for r in &self.rules {
            if r.is_axiom() {
                writeln!(f, "axiom {} : {}", r.name, join(&r.conclusions))?;
            } else {
                writeln!(f, "rule {} : {} |- {}", r.name, join(&r.premises), join(&r.conclusions))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula::{atom, imp, meta};
    use crate::syntax::parse::parse_formula;

    const BCI: &str = "system BCI
axiom I  : p -> p
axiom B  : (p -> q) -> ((r -> p) -> (r -> q))
axiom C  : (p -> (q -> r)) -> (q -> (p -> r))   # permutation
rule  mp : p -> q, p |- q
";

    #[test]
    fn reads_and_prints_bci() {
        let s = AxiomaticSystem::parse(BCI).unwrap();
        assert_eq!(s.rules.len(), 4);
        assert!(!s.symmetric);
        let mp = s.rule("mp").unwrap();
        assert_eq!(mp.premises, vec![imp(meta("p"), meta("q")), meta("p")]);
        assert_eq!(AxiomaticSystem::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn axiom_instances() {
        let s = AxiomaticSystem::parse(BCI).unwrap();
        assert!(s.is_axiom(&parse_formula("a -> a").unwrap()));
        assert!(!s.is_axiom(&parse_formula("a -> b").unwrap()));
    }

    #[test]
    fn declared_atoms_are_not_metavariables() {
        let s = AxiomaticSystem::parse("system toy\natoms x y z\naxiom ax : x\naxiom ay : y\n").unwrap();
        assert_eq!(s.rule("ax").unwrap().conclusions, vec![atom("x")]);
        assert!(!s.is_axiom(&atom("z")));
    }

    #[test]
    fn symmetric_rules() {
        let s = AxiomaticSystem::parse("system S\nrule r1 : p, q |- p, q\n").unwrap();
        assert!(s.symmetric);
        assert_eq!(AxiomaticSystem::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        let dup = "system D\naxiom I : p -> p\naxiom I : p\n";
        assert_eq!(AxiomaticSystem::parse(dup), Err(SystemError::DuplicateRule("I".into())));
        assert!(AxiomaticSystem::parse("system D\nrule mp : p -> q, p\n").is_err());
        assert!(AxiomaticSystem::parse("axiom I : p\n").is_err());
        let e = AxiomaticSystem::parse("system D\naxiom I : p -> \n").unwrap_err();
        assert!(matches!(e, SystemError::Parse(ParseError { line: 2, .. })));
    }

    #[test]
    fn rule_instance_matching() {
        let s = AxiomaticSystem::parse(BCI).unwrap();
        let mp = s.rule("mp").unwrap();
        let (a, b) = (atom("a"), atom("b"));
        let sigma = mp.match_instance(&[a.clone(), imp(a.clone(), b.clone())], &[b.clone()], None);
        assert!(sigma.is_some());
        assert!(mp.match_instance(&[a.clone(), imp(b.clone(), a.clone())], &[b], None).is_none());
    }
}
