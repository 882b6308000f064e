//! Semantic consequence: finite matrices and integer Abelian logic.

mod abelian;
mod matrix;

use thiserror::Error;

use crate::oracle::{SymmetricOracle, Verdict};
use crate::syntax::{Formula, Multiset, Name};

pub use abelian::{
    abelian_oracle, abelian_symmetric, eval_int, grid_refute, AbelianKind, AbelianOracle, AbelianSymmetric,
    DesignationPreserving, IntValuation, LinearForm, DEFAULT_GRID,
};
pub use matrix::{Matrix, MatrixValuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("valuation does not cover atom `{0}`")]
    MissingAtom(String),
    #[error("matrix has no table for `{0}`")]
    MissingTable(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow")]
    Overflow,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A symmetric relation over multisets of one atom: Γ ⊢ Δ iff Γ = Δ or
/// Γ(x) > Δ(x) ≥ 2. Reflexive and transitive and compatible, yet not
/// monotone. Multisets containing anything else get `Unknown`.
#[derive(Clone, Debug)]
pub struct CountingRelation {
    pub atom: Name,
}

impl Default for CountingRelation {
    fn default() -> Self {
        CountingRelation { atom: "x".into() }
    }
}

impl CountingRelation {
    fn count(&self, m: &Multiset) -> Option<usize> {
        let x = Formula::Atom(self.atom.clone());
        (m.multiplicity(&x) == m.len()).then_some(m.len())
    }
}

impl SymmetricOracle for CountingRelation {
    fn entails_sym(&self, premises: &Multiset, conclusions: &Multiset) -> Verdict {
        match (self.count(premises), self.count(conclusions)) {
            (Some(g), Some(d)) => Verdict::from_bool(g == d || (g > d && d >= 2)),
            _ => Verdict::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::atom;

    fn xs(n: usize) -> Multiset {
        Multiset::from_counts([(atom("x"), n)])
    }

    #[test]
    fn counting_relation() {
        let r = CountingRelation::default();
        assert!(r.entails_sym(&xs(1), &xs(1)).holds());
        assert!(r.entails_sym(&xs(2), &xs(1)).fails());
        assert!(r.entails_sym(&xs(3), &xs(2)).holds());
        assert!(r.entails_sym(&xs(0), &xs(0)).holds());
        assert!(r.entails_sym(&xs(1), &xs(0)).fails());
        let other: Multiset = [atom("y")].into_iter().collect();
        assert_eq!(r.entails_sym(&other, &xs(1)), Verdict::Unknown);
    }
}
