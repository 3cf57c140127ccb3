//! Abstract syntax, parser and canonical printer for formulas.
//!
//! Concrete syntax, tightest binding first:
//!
//! ```text
//! !f    K{a,b} f    H{a} f      prefix operators
//! f & g                         left associative, sugar for !(f -> !g)
//! f | g                         left associative, sugar for !f -> g
//! f -> g                        right associative
//! ```
//!
//! `true` and `false` are sugar over the reserved variable `z0`:
//! `true` is `z0 -> z0` and `false` is `!(z0 -> z0)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Internal variable backing the `true`/`false` constants. Not accepted in user input.
pub const CONSTANT_VAR: &str = "z0";

const RESERVED_WORDS: [&str; 2] = ["true", "false"];
const RESERVED_VARIABLES: [&str; 3] = ["K", "H", CONSTANT_VAR];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Returns true if `s` may be used as a propositional variable in formula text.
pub fn is_variable_name(s: &str) -> bool {
    is_identifier(s) && !RESERVED_WORDS.contains(&s) && !RESERVED_VARIABLES.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid agent name `{0}`")]
pub struct InvalidAgentName(pub String);

/// Name of an agent: an identifier other than `true` or `false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AgentName(String);

impl AgentName {
    pub fn new(name: impl Into<String>) -> Result<Self, InvalidAgentName> {
        let name = name.into();
        if is_identifier(&name) && !RESERVED_WORDS.contains(&name.as_str()) {
            Ok(AgentName(name))
        } else {
            Err(InvalidAgentName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for AgentName {
    type Error = InvalidAgentName;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        AgentName::new(value)
    }
}

impl From<AgentName> for String {
    fn from(value: AgentName) -> Self {
        value.0
    }
}

impl fmt::Display for AgentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite, possibly empty set of agents. Members are kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition(BTreeSet<AgentName>);

impl Coalition {
    pub fn empty() -> Self {
        Coalition(BTreeSet::new())
    }

    /// Builds a coalition from names, panicking on an invalid name. Intended for literals.
    pub fn of(names: &[&str]) -> Self {
        names
            .iter()
            .map(|n| AgentName::new(*n).expect("invalid agent name"))
            .collect()
    }

    pub fn members(&self) -> impl Iterator<Item = &AgentName> + '_ {
        self.0.iter()
    }

    pub fn contains(&self, agent: &AgentName) -> bool {
        self.0.contains(agent)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Coalition) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        Coalition(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Coalition) -> Coalition {
        Coalition(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Coalition) -> Coalition {
        Coalition(self.0.difference(&other.0).cloned().collect())
    }

    pub fn insert(&mut self, agent: AgentName) -> bool {
        self.0.insert(agent)
    }
}

impl FromIterator<AgentName> for Coalition {
    fn from_iter<I: IntoIterator<Item = AgentName>>(iter: I) -> Self {
        Coalition(iter.into_iter().collect())
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a.as_str())?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Neg(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// Distributed knowledge of the coalition.
    Know(Coalition, Box<Formula>),
    /// The coalition knows a clandestine operation achieving the body.
    Can(Coalition, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(body: Formula) -> Formula {
        Formula::Neg(Box::new(body))
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Imp(Box::new(lhs), Box::new(rhs))
    }

    pub fn know(coalition: Coalition, body: Formula) -> Formula {
        Formula::Know(coalition, Box::new(body))
    }

    pub fn can(coalition: Coalition, body: Formula) -> Formula {
        Formula::Can(coalition, Box::new(body))
    }

    pub fn top() -> Formula {
        Formula::imp(Formula::var(CONSTANT_VAR), Formula::var(CONSTANT_VAR))
    }

    pub fn bottom() -> Formula {
        Formula::neg(Formula::top())
    }

    /// `a | b`, i.e. `!a -> b`.
    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::imp(Formula::neg(lhs), rhs)
    }

    /// `a & b`, i.e. `!(a -> !b)`.
    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::neg(Formula::imp(lhs, Formula::neg(rhs)))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Imp(l, r)
            if matches!(l.as_ref(), Formula::Var(v) if v == CONSTANT_VAR)
            && matches!(r.as_ref(), Formula::Var(v) if v == CONSTANT_VAR))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Neg(b) if b.is_top())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Neg(b) | Formula::Know(_, b) | Formula::Can(_, b) => 1 + b.size(),
            Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(b) | Formula::Know(_, b) | Formula::Can(_, b) => 1 + b.depth(),
            Formula::Imp(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// All agents mentioned in some coalition of the formula.
    pub fn agents(&self) -> BTreeSet<AgentName> {
        let mut out = BTreeSet::new();
        self.collect_agents(&mut out);
        out
    }

    fn collect_agents(&self, out: &mut BTreeSet<AgentName>) {
        match self {
            Formula::Var(_) => {}
            Formula::Neg(b) => b.collect_agents(out),
            Formula::Imp(l, r) => {
                l.collect_agents(out);
                r.collect_agents(out);
            }
            Formula::Know(c, b) | Formula::Can(c, b) => {
                out.extend(c.members().cloned());
                b.collect_agents(out);
            }
        }
    }

    /// All propositional variables of the formula, excluding the internal constant variable.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out.remove(CONSTANT_VAR);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Neg(b) | Formula::Know(_, b) | Formula::Can(_, b) => b.collect_vars(out),
            Formula::Imp(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

/// Maximal subformulas headed by a variable, `K` or `H`, in first-occurrence order.
///
/// The formula is a propositional combination of these atoms.
pub fn modal_atoms(f: &Formula) -> Vec<Formula> {
    fn walk(f: &Formula, out: &mut Vec<Formula>) {
        match f {
            Formula::Neg(b) => walk(b, out),
            Formula::Imp(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            atom => {
                if !out.contains(atom) {
                    out.push(atom.clone());
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("reserved word `{word}` at {pos} cannot be used as {role}")]
    Reserved {
        pos: usize,
        word: String,
        role: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {}
                    other => {
                        return Err(ParseError::Syntax {
                            pos: other.map_or(text.len(), |&(p, _)| p),
                            expected: "`>` after `-`".into(),
                            found: other.map_or("end of input".into(), |&(_, c)| format!("`{c}`")),
                        })
                    }
                }
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(ident)));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "K" | "H" => {
                        let coalition = self.coalition()?;
                        let body = self.unary()?;
                        Ok(if name == "K" {
                            Formula::know(coalition, body)
                        } else {
                            Formula::can(coalition, body)
                        })
                    }
                    "true" => Ok(Formula::top()),
                    "false" => Ok(Formula::bottom()),
                    CONSTANT_VAR => Err(ParseError::Reserved {
                        pos,
                        word: name,
                        role: "a variable",
                    }),
                    _ => Ok(Formula::Var(name)),
                }
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn coalition(&mut self) -> Result<Coalition, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut members = Coalition::empty();
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(members);
        }
        loop {
            let pos = self.pos();
            match self.bump() {
                Tok::Ident(name) => {
                    let agent = AgentName::new(name.clone()).map_err(|_| ParseError::Reserved {
                        pos,
                        word: name,
                        role: "an agent",
                    })?;
                    members.insert(agent);
                }
                _ => {
                    self.at -= 1;
                    return Err(self.error("an agent name"));
                }
            }
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBrace => {
                    self.bump();
                    return Ok(members);
                }
                _ => return Err(self.error("`,` or `}`")),
            }
        }
    }
}

/// Parses formula text. Positions in errors are byte offsets.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Canonical text with minimal parentheses. Inverse of [`parse_formula`].
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    if f.is_top() {
        out.push_str("true");
        return;
    }
    if f.is_bottom() {
        out.push_str("false");
        return;
    }
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Neg(b) => {
            out.push('!');
            write_operand(b, out);
        }
        Formula::Know(c, b) | Formula::Can(c, b) => {
            out.push(if matches!(f, Formula::Know(..)) { 'K' } else { 'H' });
            out.push_str(&c.to_string());
            out.push(' ');
            write_operand(b, out);
        }
        Formula::Imp(l, r) => {
            if matches!(l.as_ref(), Formula::Imp(..)) && !l.is_top() {
                out.push('(');
                write_formula(l, out);
                out.push(')');
            } else {
                write_formula(l, out);
            }
            out.push_str(" -> ");
            write_formula(r, out);
        }
    }
}

fn write_operand(f: &Formula, out: &mut String) {
    if matches!(f, Formula::Imp(..)) && !f.is_top() {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_formula(self))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_knowledge_of_negated_power() {
        let expected = Formula::know(
            Coalition::of(&["a", "b"]),
            Formula::imp(
                Formula::var("m"),
                Formula::neg(Formula::can(Coalition::of(&["c"]), Formula::var("m"))),
            ),
        );
        assert_eq!(p("K{a,b} (m -> !H{c} m)"), expected);
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            p("p -> q -> r"),
            Formula::imp(Formula::var("p"), Formula::imp(Formula::var("q"), Formula::var("r")))
        );
    }

    #[test]
    fn missing_brace_is_a_syntax_error() {
        match parse_formula("K a p") {
            Err(ParseError::Syntax { pos, expected, .. }) => {
                assert_eq!(pos, 2);
                assert_eq!(expected, "`{`");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_coalition_is_legal() {
        assert_eq!(p("H{} false"), Formula::can(Coalition::empty(), Formula::bottom()));
    }

    #[test]
    fn reserved_words_rejected() {
        assert!(matches!(parse_formula("z0 -> p"), Err(ParseError::Reserved { .. })));
        assert!(matches!(parse_formula("K{true} p"), Err(ParseError::Reserved { .. })));
        assert!(matches!(parse_formula("K{a,false} p"), Err(ParseError::Reserved { .. })));
        assert!(parse_formula("K -> p").is_err());
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "p ->", "(p", "p q", "K{a,} p", "K{a b} p", "p - q", "p # q", "K{a}"] {
            assert!(parse_formula(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn sugar_desugars() {
        assert_eq!(p("a | b"), p("!a -> b"));
        assert_eq!(p("a & b"), p("!(a -> !b)"));
        assert_eq!(p("true"), Formula::top());
        assert_eq!(p("false"), Formula::bottom());
        // & binds tighter than |, | tighter than ->
        assert_eq!(p("a & b | c -> d"), p("((a & b) | c) -> d"));
        assert_eq!(p("a | b | c"), p("(a | b) | c"));
        assert_eq!(p("!K{a} p & q"), p("(!(K{a} p)) & q"));
    }

    #[test]
    fn newlines_insignificant() {
        assert_eq!(p("K{a,\n b}\n p\n->\tq"), p("K{a,b} p -> q"));
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(print_formula(&Formula::imp(Formula::var("p"), Formula::var("q"))), "p -> q");
        assert_eq!(
            print_formula(&Formula::know(Coalition::of(&["b", "a"]), Formula::var("p"))),
            "K{a,b} p"
        );
        assert_eq!(print_formula(&Formula::can(Coalition::empty(), Formula::bottom())), "H{} false");
        assert_eq!(print_formula(&p("(p -> q) -> r")), "(p -> q) -> r");
        assert_eq!(print_formula(&p("p -> (q -> r)")), "p -> q -> r");
        assert_eq!(print_formula(&p("K{a} (p -> q)")), "K{a} (p -> q)");
        assert_eq!(print_formula(&p("!(true) -> true")), "false -> true");
        assert_eq!(print_formula(&p("K{a,a} p")), "K{a} p");
    }

    #[test]
    fn modal_atoms_examples() {
        assert_eq!(modal_atoms(&p("K{a} p -> p")), vec![p("K{a} p"), p("p")]);
        assert_eq!(modal_atoms(&p("p -> p")), vec![p("p")]);
        assert_eq!(modal_atoms(&p("!(H{a} q) | H{a} q")), vec![p("H{a} q")]);
        assert_eq!(modal_atoms(&p("true")), vec![Formula::var(CONSTANT_VAR)]);
    }

    #[test]
    fn agent_name_validation() {
        assert!(AgentName::new("a_1").is_ok());
        assert!(AgentName::new("1a").is_err());
        assert!(AgentName::new("").is_err());
        assert!(AgentName::new("true").is_err());
        assert!(AgentName::new("a-b").is_err());
    }

    #[test]
    fn agents_and_variables() {
        let f = p("K{b,a} (m -> !H{c} true)");
        assert_eq!(f.agents().len(), 3);
        assert_eq!(f.variables().into_iter().collect::<Vec<_>>(), vec!["m".to_string()]);
    }
}
