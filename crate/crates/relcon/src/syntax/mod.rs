//! Formulas, schemata, and the text formats for formulas, multisets and systems.

mod formula;
mod parse;
mod system;

pub use formula::{
    and, atom, fusion, imp, match_multiset, meta, not, numeral, or, Assignment, Connective,
    Formula, MissingBinding, Name,
};
pub use parse::{parse_formula, parse_formula_with, parse_multiset, print_formula, IdentMode, ParseError};
pub use system::{AxiomaticSystem, Consecution, Rule, SystemError};

/// Multisets of object formulas.
pub type Multiset = crate::multiset::FMultiset<Formula>;
