//! Tokenizer and precedence-climbing parser for formulas and multisets.

use std::collections::BTreeSet;

use thiserror::Error;

use super::formula::{and, fusion, imp, not, numeral, or, Formula, Name};
use crate::multiset::FMultiset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Minus,
    Arrow,
    Fusion,
    And,
    Or,
    Not,
    Unit,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Turnstile,
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let err = |message: String| ParseError { line, column, message };
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '|' if next == Some('-') => (Tok::Turnstile, 2),
            '-' => (Tok::Minus, 1),
            '→' => (Tok::Arrow, 1),
            '⊢' => (Tok::Turnstile, 1),
            '∘' | '*' => (Tok::Fusion, 1),
            '&' | '∧' => (Tok::And, 1),
            '|' | '∨' => (Tok::Or, 1),
            '~' | '¬' => (Tok::Not, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            c if c.is_ascii_digit() => {
                let len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
                let digits: String = chars[i..i + len].iter().collect();
                let n = digits.parse().map_err(|_| err(format!("numeral `{digits}` too large")))?;
                (Tok::Int(n), len)
            }
            c if c.is_alphabetic() || c == '_' => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'')
                    .count();
                let word: String = chars[i..i + len].iter().collect();
                let tok = match word.as_str() {
                    "o" => Tok::Fusion,
                    "t" => Tok::Unit,
                    _ => Tok::Ident(word),
                };
                (tok, len)
            }
            c => return Err(err(format!("unexpected character `{c}`"))),
        };
        out.push(Token { tok, column });
        i += width;
    }
    out.push(Token { tok: Tok::End, column: chars.len() + 1 });
    Ok(out)
}

/// How identifiers are read.
#[derive(Clone, Debug)]
pub enum IdentMode {
    /// Every identifier is an atom.
    Atoms,
    /// Lowercase-initial identifiers are metavariables unless listed.
    Schema { atoms: BTreeSet<Name> },
}

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    mode: &'a IdentMode,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &str, line: usize, mode: &'a IdentMode) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text, line)?, pos: 0, line, mode })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.toks[self.pos].column, message: message.into() }
    }

    pub(crate) fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        *self.peek() == Tok::End
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    /// Implication level: right-associative, lowest precedence.
    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.binary(2)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.formula()?;
            return Ok(imp(left, right));
        }
        Ok(left)
    }

    /// Left-associative levels: 2 = ∨, 3 = ∧, 4 = ∘.
    fn binary(&mut self, level: u8) -> Result<Formula, ParseError> {
        if level > 4 {
            return self.unary();
        }
        let (tok, build): (Tok, fn(Formula, Formula) -> Formula) = match level {
            2 => (Tok::Or, or),
            3 => (Tok::And, and),
            _ => (Tok::Fusion, fusion),
        };
        let mut acc = self.binary(level + 1)?;
        while *self.peek() == tok {
            self.bump();
            let rhs = self.binary(level + 1)?;
            acc = build(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::Not => Ok(not(self.unary()?)),
            Tok::Minus => match self.bump() {
                Tok::Int(n) => Ok(not(numeral(n))),
                _ => {
                    self.pos -= 1;
                    Err(self.error("expected a numeral after `-`"))
                }
            },
            Tok::Int(n) => Ok(numeral(n)),
            Tok::Unit => Ok(Formula::Unit),
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(w) => Ok(self.ident(w)),
            Tok::End => Err(self.error("unexpected end of input")),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a formula"))
            }
        }
    }

    fn ident(&self, w: String) -> Formula {
        let name: Name = w.as_str().into();
        match self.mode {
            IdentMode::Atoms => Formula::Atom(name),
            IdentMode::Schema { atoms } => {
                let lower = w.chars().next().is_some_and(|c| c.is_lowercase());
                if lower && !atoms.contains(&name) {
                    Formula::Meta(name)
                } else {
                    Formula::Atom(name)
                }
            }
        }
    }

    /// Comma-separated formulas up to (not including) a stop token.
    pub(crate) fn formula_list(&mut self, stop: &[Tok]) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if stop.contains(self.peek()) {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &IdentMode::Atoms)
}

pub fn parse_formula_with(text: &str, mode: &IdentMode) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, 1, mode)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Accepts `[a, b]`, `[]`, or a bare comma list.
pub fn parse_multiset(text: &str) -> Result<FMultiset<Formula>, ParseError> {
    let mode = IdentMode::Atoms;
    let mut p = Parser::new(text, 1, &mode)?;
    let items = if *p.peek() == Tok::LBracket {
        p.bump();
        let items = p.formula_list(&[Tok::RBracket])?;
        p.expect(Tok::RBracket, "`]`")?;
        items
    } else {
        p.formula_list(&[Tok::End])?
    };
    p.finish()?;
    Ok(items.into_iter().collect())
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula::{atom, meta};
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(p("p -> (q -> p)"), imp(atom("p"), imp(atom("q"), atom("p"))));
        assert_eq!(p("p -> q -> p"), p("p -> (q -> p)"));
    }

    #[test]
    fn precedence_ladder() {
        assert_eq!(p("~a o b & c | d -> e"), p("((((~a) o b) & c) | d) -> e"));
        assert_eq!(p("a o b o c"), p("(a o b) o c"));
    }

    #[test]
    fn axiom_b_shape() {
        let b = p("(p -> q) -> ((r -> p) -> (r -> q))");
        assert_eq!(b.to_string(), "(p -> q) -> (r -> p) -> r -> q");
        assert_eq!(p(&b.to_string()), b);
    }

    #[test]
    fn numerals() {
        assert_eq!(p("2"), fusion(Formula::One, Formula::One));
        assert_eq!(p("-1"), not(Formula::One));
        assert_eq!(p("~-1"), not(not(Formula::One)));
        assert_eq!(p("0"), Formula::Zero);
        assert_eq!(p("t o 1"), fusion(Formula::Unit, Formula::One));
    }

    #[test]
    fn schema_mode_reads_metavariables() {
        let atoms = ["x".into()].into_iter().collect();
        let mode = IdentMode::Schema { atoms };
        let f = parse_formula_with("p -> x -> Q", &mode).unwrap();
        assert_eq!(f, imp(meta("p"), imp(atom("x"), atom("Q"))));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_formula("p -> ").unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_formula("p q").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_formula("p $ q").is_err());
    }

    #[test]
    fn multisets_collapse_counts() {
        let m = parse_multiset("[p, q, p]").unwrap();
        assert_eq!(m.multiplicity(&atom("p")), 2);
        assert_eq!(m.to_string(), "[p, p, q]");
        assert!(parse_multiset("[]").unwrap().is_empty());
        assert_eq!(parse_multiset("p->q, p").unwrap().len(), 2);
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["a", "b", "c"]).prop_map(atom),
            Just(Formula::Zero),
            Just(Formula::One),
            Just(Formula::Unit),
            (-4i64..5).prop_map(numeral),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| fusion(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
        }

        #[test]
        fn match_substitute_round_trip(s in arb_formula(), g in arb_formula()) {
            // abstract every occurrence of atom `a` into a metavariable
            let schema = parse_formula_with(
                &s.to_string(),
                &IdentMode::Schema { atoms: ["b".into(), "c".into()].into_iter().collect() },
            ).unwrap();
            let sigma = [("a".into(), g)].into_iter().collect();
            let inst = schema.substitute(&sigma).unwrap();
            let back = schema.matches(&inst).unwrap();
            prop_assert_eq!(schema.substitute(&back).unwrap(), inst);
        }
    }
}
