use super::{Justification, ProofError, ProofTree};
use crate::syntax::{imp, AxiomaticSystem, Formula};

/// Replaces the leftmost premise leaf labeled `psi` in `t` by `s`.
pub fn cut_compose(t: &ProofTree, s: &ProofTree, psi: &Formula) -> Result<ProofTree, ProofError> {
    if &s.formula != psi {
        return Err(ProofError::RootMismatch { expected: psi.clone(), found: s.formula.clone() });
    }
    let mut out = t.clone();
    if replace_leftmost(&mut out, s, psi) {
        Ok(out)
    } else {
        Err(ProofError::NoLeaf(psi.clone()))
    }
}

fn replace_leftmost(t: &mut ProofTree, s: &ProofTree, psi: &Formula) -> bool {
    if t.is_leaf() && t.by == Justification::Premise && &t.formula == psi {
        *t = s.clone();
        return true;
    }
    t.children.iter_mut().any(|c| replace_leftmost(c, s, psi))
}

/// Adds one premise leaf `chi` above the root: weaken the root φ to χ→φ, then
/// detach with χ. `mp` and `weakening` name the rules playing those roles.
pub fn pump_use(
    t: &ProofTree,
    chi: &Formula,
    system: &AxiomaticSystem,
    mp: &str,
    weakening: &str,
) -> Result<ProofTree, ProofError> {
    let phi = &t.formula;
    let lifted = imp(chi.clone(), phi.clone());
    let fits = |name: &str, left: &[Formula], right: &Formula| {
        system
            .rule(name)
            .filter(|r| !r.is_axiom())
            .and_then(|r| r.match_instance(left, std::slice::from_ref(right), None))
            .is_some()
    };
    if !fits(weakening, std::slice::from_ref(phi), &lifted) {
        return Err(ProofError::RequiredRulesAbsent(format!("`{weakening}` does not derive {lifted} from {phi}")));
    }
    if !fits(mp, &[lifted.clone(), chi.clone()], phi) {
        return Err(ProofError::RequiredRulesAbsent(format!("`{mp}` does not detach {lifted}")));
    }
    Ok(ProofTree::rule(phi.clone(), mp, vec![
        ProofTree::rule(lifted, weakening, vec![t.clone()]),
        ProofTree::premise(chi.clone()),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, parse_formula, parse_multiset};
    use crate::treeproof::{verify, RelevanceVerdict};

    const BCK: &str = "system MPK
axiom I : p -> p
rule mp : p -> q, p |- q
rule k : p |- q -> p
";

    fn mp_tree() -> ProofTree {
        let (p, q) = (atom("p"), atom("q"));
        ProofTree::rule(q.clone(), "mp", vec![
            ProofTree::premise(imp(p.clone(), q)),
            ProofTree::premise(p),
        ])
    }

    #[test]
    fn identity_cut() {
        let p = atom("p");
        let r = cut_compose(&mp_tree(), &ProofTree::premise(p.clone()), &p).unwrap();
        assert_eq!(r, mp_tree());
        assert_eq!(r.leaf_multiset().multiplicity(&p), 1);
    }

    #[test]
    fn cut_errors() {
        let (p, z) = (atom("p"), atom("z"));
        let s = ProofTree::premise(z.clone());
        assert!(matches!(cut_compose(&mp_tree(), &s, &z), Err(ProofError::NoLeaf(_))));
        assert!(matches!(cut_compose(&mp_tree(), &s, &p), Err(ProofError::RootMismatch { .. })));
    }

    #[test]
    fn composing_mp_trees_stays_relevant() {
        let bci = AxiomaticSystem::parse(crate::treeproof::tests::BCI).unwrap();
        // T: [a -> b, a] ⊢ b ; S: [c -> a, c] ⊢ a
        let f = |s: &str| parse_formula(s).unwrap();
        let t = ProofTree::rule(f("b"), "mp", vec![ProofTree::premise(f("a -> b")), ProofTree::premise(f("a"))]);
        let s = ProofTree::rule(f("a"), "mp", vec![ProofTree::premise(f("c -> a")), ProofTree::premise(f("c"))]);
        let r = cut_compose(&t, &s, &f("a")).unwrap();
        let g = parse_multiset("[a -> b, c -> a, c]").unwrap();
        assert_eq!(verify(&r, &bci, &g, &f("b")), RelevanceVerdict::StronglyRelevant);
    }

    #[test]
    fn pump_adds_one_leaf() {
        let sys = AxiomaticSystem::parse(BCK).unwrap();
        let pp = parse_formula("p -> p").unwrap();
        let q = atom("q");
        let t = ProofTree::axiom(pp.clone(), "I");
        let once = pump_use(&t, &q, &sys, "mp", "k").unwrap();
        assert_eq!(once.size(), t.size() + 3);
        let g = parse_multiset("[q]").unwrap();
        assert_eq!(verify(&once, &sys, &g, &pp), RelevanceVerdict::Relevant);
        let twice = pump_use(&once, &q, &sys, "mp", "k").unwrap();
        assert_eq!(twice.leaf_multiset().multiplicity(&q), 2);
        let gg = parse_multiset("[q, q]").unwrap();
        assert_eq!(verify(&twice, &sys, &gg, &pp), RelevanceVerdict::Relevant);
    }

    #[test]
    fn pump_needs_both_rules() {
        let bci = AxiomaticSystem::parse(crate::treeproof::tests::BCI).unwrap();
        let t = ProofTree::axiom(parse_formula("p -> p").unwrap(), "I");
        let e = pump_use(&t, &atom("q"), &bci, "mp", "k").unwrap_err();
        assert!(matches!(e, ProofError::RequiredRulesAbsent(_)));
    }
}
