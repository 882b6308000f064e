//! The deduction transformation for BCI-style systems: a relevant proof of ψ
//! from Γ⊎[φ] becomes a relevant proof of φ→ψ from Γ.
//!
//! Recursion along the path to the distinguished φ leaf. At an MP node with
//! major χ→ψ and minor χ:
//! - φ above the major premise: from φ→(χ→ψ) get χ→(φ→ψ) by C, detach χ;
//! - φ above the minor premise: from φ→χ and B's (χ→ψ)→((φ→χ)→(φ→ψ)), detach twice.

use super::{verify, Justification, ProofError, ProofTree, RelevanceVerdict};
use crate::syntax::{imp, AxiomaticSystem, Formula, Multiset, Name, Rule};

/// Rule names playing the roles of I, B, C and MP in a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BciShapes {
    pub i: Name,
    pub b: Name,
    pub c: Name,
    pub mp: Name,
}

const REFERENCE: &str = "system ref
axiom I : p -> p
axiom B : (p -> q) -> ((r -> p) -> (r -> q))
axiom C : (p -> (q -> r)) -> (q -> (p -> r))
rule mp : p -> q, p |- q
";

fn same_shape(a: &Rule, b: &Rule) -> bool {
    let (mut pa, ca) = a.shape();
    let (mut pb, cb) = b.shape();
    pa.sort();
    pb.sort();
    pa == pb && ca == cb
}

impl BciShapes {
    /// Locates I, B, C and MP by structure; every proper rule must be MP.
    pub fn find(system: &AxiomaticSystem) -> Result<Self, ProofError> {
        let reference = AxiomaticSystem::parse(REFERENCE).expect("reference system parses");
        let lookup = |name: &str| -> Result<Name, ProofError> {
            let want = reference.rule(name).expect("reference rule");
            system
                .rules
                .iter()
                .find(|r| same_shape(r, want))
                .map(|r| r.name.clone())
                .ok_or_else(|| ProofError::UnsupportedSystem(format!("no rule of the shape of {name}")))
        };
        let shapes = BciShapes { i: lookup("I")?, b: lookup("B")?, c: lookup("C")?, mp: lookup("mp")? };
        let mp_shape = reference.rule("mp").expect("reference rule");
        if let Some(r) = system.proper_rules().find(|r| !same_shape(r, mp_shape)) {
            return Err(ProofError::UnsupportedSystem(format!("rule {} is not modus ponens", r.name)));
        }
        Ok(shapes)
    }
}

/// `t` must be relevant for (Γ⊎[φ], ψ); the leftmost leaf labeled φ is
/// discharged.
pub fn deduction_transform(
    t: &ProofTree,
    system: &AxiomaticSystem,
    gamma: &Multiset,
    phi: &Formula,
) -> Result<ProofTree, ProofError> {
    let shapes = BciShapes::find(system)?;
    let mut with_phi = gamma.clone();
    with_phi.insert(phi.clone());
    let v = verify(t, system, &with_phi, &t.formula);
    if v < RelevanceVerdict::Relevant {
        return Err(ProofError::NotRelevant(v));
    }
    let path = leftmost_path(t, phi).ok_or_else(|| ProofError::NoLeaf(phi.clone()))?;
    let mut out = discharge(t, phi, &path, &shapes);
    retag(&mut out, gamma, system);
    Ok(out)
}

fn leftmost_path(t: &ProofTree, phi: &Formula) -> Option<Vec<usize>> {
    if t.is_leaf() {
        return (&t.formula == phi).then(Vec::new);
    }
    t.children.iter().enumerate().find_map(|(i, c)| {
        let mut p = leftmost_path(c, phi)?;
        p.insert(0, i);
        Some(p)
    })
}

fn discharge(t: &ProofTree, phi: &Formula, path: &[usize], s: &BciShapes) -> ProofTree {
    let psi = &t.formula;
    let Some((&next, rest)) = path.split_first() else {
        return ProofTree::axiom(imp(phi.clone(), phi.clone()), &s.i);
    };
    let (major, minor) = match &t.children[0].formula {
        Formula::Imp(a, b) if **a == t.children[1].formula && **b == *psi => (0, 1),
        _ => (1, 0),
    };
    let (major_t, minor_t) = (&t.children[major], &t.children[minor]);
    let chi = minor_t.formula.clone();
    let phi_psi = imp(phi.clone(), psi.clone());
    if next == major {
        let inner = discharge(major_t, phi, rest, s);
        let swapped = imp(chi.clone(), phi_psi.clone());
        let c_inst = imp(inner.formula.clone(), swapped.clone());
        let step = ProofTree::rule(swapped, &s.mp, vec![ProofTree::axiom(c_inst, &s.c), inner]);
        ProofTree::rule(phi_psi, &s.mp, vec![step, minor_t.clone()])
    } else {
        let inner = discharge(minor_t, phi, rest, s);
        let lifted = imp(inner.formula.clone(), phi_psi.clone());
        let b_inst = imp(major_t.formula.clone(), lifted.clone());
        let step = ProofTree::rule(lifted, &s.mp, vec![ProofTree::axiom(b_inst, &s.b), major_t.clone()]);
        ProofTree::rule(phi_psi, &s.mp, vec![step, inner])
    }
}

/// Premise leaves whose label left Γ but is an axiom are relabeled as axioms.
fn retag(t: &mut ProofTree, gamma: &Multiset, system: &AxiomaticSystem) {
    if t.is_leaf() && t.by == Justification::Premise && !gamma.contains(&t.formula) {
        if let Some((r, _)) = system.axiom_for(&t.formula) {
            t.by = Justification::Axiom { name: r.name.clone(), subst: None };
        }
    }
    for c in &mut t.children {
        retag(c, gamma, system);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_multiset};
    use crate::treeproof::{search, SearchBounds};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn bci() -> AxiomaticSystem {
        AxiomaticSystem::parse(crate::treeproof::tests::BCI).unwrap()
    }

    #[test]
    fn finds_shapes_under_renaming() {
        let s = AxiomaticSystem::parse(
            "system X\naxiom id : a -> a\naxiom perm : (x -> (y -> z)) -> (y -> (x -> z))\naxiom pre : (a -> b) -> ((c -> a) -> (c -> b))\nrule det : a, a -> b |- b\n",
        )
        .unwrap();
        let shapes = BciShapes::find(&s).unwrap();
        assert_eq!((&*shapes.i, &*shapes.c, &*shapes.b, &*shapes.mp), ("id", "perm", "pre", "det"));
    }

    #[test]
    fn rejects_other_systems() {
        let s = AxiomaticSystem::parse("system K\naxiom I : p -> p\nrule mp : p -> q, p |- q\n").unwrap();
        assert!(matches!(BciShapes::find(&s), Err(ProofError::UnsupportedSystem(_))));
    }

    #[test]
    fn base_case_is_identity_axiom() {
        let t = ProofTree::premise(f("p"));
        let out = deduction_transform(&t, &bci(), &Multiset::new(), &f("p")).unwrap();
        assert_eq!(out.formula, f("p -> p"));
        assert!(verify(&out, &bci(), &Multiset::new(), &f("p -> p")) >= RelevanceVerdict::Relevant);
    }

    #[test]
    fn minor_premise_discharge() {
        let t = ProofTree::rule(f("q"), "mp", vec![ProofTree::premise(f("p -> q")), ProofTree::premise(f("p"))]);
        let g = parse_multiset("[p -> q]").unwrap();
        let out = deduction_transform(&t, &bci(), &g, &f("p")).unwrap();
        assert!(verify(&out, &bci(), &g, &f("p -> q")) >= RelevanceVerdict::Relevant);
    }

    #[test]
    fn double_mp() {
        let g = parse_multiset("[p -> (p -> q), p, p]").unwrap();
        let t = search(&bci(), &g, &f("q"), SearchBounds::default()).unwrap();
        let rest = parse_multiset("[p -> (p -> q), p]").unwrap();
        let out = deduction_transform(&t, &bci(), &rest, &f("p")).unwrap();
        assert!(verify(&out, &bci(), &rest, &f("p -> q")) >= RelevanceVerdict::Relevant);
        assert!(search(&bci(), &rest, &f("p -> q"), SearchBounds::default()).is_some());
    }

    #[test]
    fn rejects_irrelevant_input() {
        let t = ProofTree::premise(f("p"));
        let g = parse_multiset("[q]").unwrap();
        assert!(matches!(deduction_transform(&t, &bci(), &g, &f("p")), Err(ProofError::NotRelevant(_))));
    }
}
