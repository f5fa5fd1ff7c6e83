//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `->`. `&` and `|` associate to
//! the left, `->` to the right. A quantifier `forall x. φ` extends as far to
//! the right as possible, i.e. to the end of the enclosing parentheses (or
//! the next top-level comma / `==>` of a sequent). Consecutive quantifiers
//! may share one dot: `forall x forall y. φ`.
//!
//! Lowercase identifiers bound by an enclosing quantifier become variables;
//! every other lowercase identifier is a function symbol (a constant when it
//! has no arguments).

use std::collections::HashMap;
use std::fmt;

use super::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Imp,
    Eq,
    Turnstile,
    Forall,
    Exists,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Turnstile => "`==>`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected token; carries the set of tokens that would have been accepted.
    Unexpected { found: String, expected: Vec<String> },
    /// Character that starts no token.
    BadChar(char),
    /// A symbol used with two different arities.
    Arity { symbol: String, first: usize, second: usize },
}

/// Parse failure with a character offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => write!(
                f,
                "at offset {}: unexpected {found}, expected {}",
                self.offset,
                expected.join(" or ")
            ),
            ParseErrorKind::BadChar(c) => write!(f, "at offset {}: unexpected character `{c}`", self.offset),
            ParseErrorKind::Arity { symbol, first, second } => write!(
                f,
                "at offset {}: symbol `{symbol}` used with arity {second} but earlier with arity {first}",
                self.offset
            ),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '⟹' | '⇒' => Tok::Turnstile,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Imp
            }
            '=' if chars.get(i + 1) == Some(&'=') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Tok::Turnstile
            }
            '=' => Tok::Eq,
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j;
                out.push((
                    match word.as_str() {
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => Tok::Ident(word),
                    },
                    start,
                ));
                continue;
            }
            other => {
                return Err(ParseError { offset: i, kind: ParseErrorKind::BadChar(other) });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

/// Stateful parser over one input text. Symbol arities are shared by
/// everything parsed from the same parser, so a sequent parsed formula by
/// formula still rejects `P(a), P(a,b)`.
pub struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
    pred_arity: HashMap<String, usize>,
    func_arity: HashMap<String, usize>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            bound: Vec::new(),
            pred_arity: HashMap::new(),
            func_arity: HashMap::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Unexpected {
                found: self.peek().describe(),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[&tok.describe()])
        }
    }

    pub fn at_end(&self) -> bool {
        *self.peek() == Tok::End
    }

    pub fn expect_end(&mut self) -> PResult<()> {
        self.expect(Tok::End)
    }

    fn record_arity(table: &mut HashMap<String, usize>, name: &str, arity: usize, offset: usize) -> PResult<()> {
        match table.get(name) {
            Some(&first) if first != arity => Err(ParseError {
                offset,
                kind: ParseErrorKind::Arity { symbol: name.to_string(), first, second: arity },
            }),
            Some(_) => Ok(()),
            None => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    /// Parses one formula; stops before a top-level `,`, `)`, `==>` or the end.
    pub fn formula(&mut self) -> PResult<Formula> {
        self.implication()
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.implication()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_uppercase()) => {
                let offset = self.offset();
                self.bump();
                let args = if *self.peek() == Tok::LParen { self.arguments()? } else { Vec::new() };
                Self::record_arity(&mut self.pred_arity, &name, args.len(), offset)?;
                Ok(Formula::Pred(name, args))
            }
            Tok::Ident(_) => {
                let lhs = self.term()?;
                self.expect(Tok::Eq)?;
                let rhs = self.term()?;
                Ok(Formula::Eq(lhs, rhs))
            }
            _ => self.unexpected(&["formula"]),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let universal = self.bump() == Tok::Forall;
        let var = match self.peek().clone() {
            Tok::Ident(v) if v.starts_with(|c: char| c.is_ascii_lowercase()) => {
                self.bump();
                v
            }
            _ => return self.unexpected(&["variable"]),
        };
        self.bound.push(var.clone());
        let body = match self.peek() {
            Tok::Dot => {
                self.bump();
                self.formula()
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.unexpected(&["`.`", "quantifier"]),
        };
        self.bound.pop();
        let body = body?;
        Ok(if universal { Formula::forall(var, body) } else { Formula::exists(var, body) })
    }

    fn arguments(&mut self) -> PResult<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    pub fn term(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_lowercase()) => {
                let offset = self.offset();
                self.bump();
                if *self.peek() == Tok::LParen {
                    let args = self.arguments()?;
                    Self::record_arity(&mut self.func_arity, &name, args.len(), offset)?;
                    Ok(Term::Func(name, args))
                } else if self.bound.contains(&name) {
                    Ok(Term::Var(name))
                } else {
                    Self::record_arity(&mut self.func_arity, &name, 0, offset)?;
                    Ok(Term::Func(name, Vec::new()))
                }
            }
            _ => self.unexpected(&["term"]),
        }
    }

    /// Parses `φ1, .., φn ==> ψ1, .., ψm`; either side may be empty.
    pub fn sequent_sides(&mut self) -> PResult<(Vec<Formula>, Vec<Formula>)> {
        let antecedent = self.formula_list(&Tok::Turnstile)?;
        self.expect(Tok::Turnstile)?;
        let succedent = self.formula_list(&Tok::End)?;
        self.expect_end()?;
        Ok((antecedent, succedent))
    }

    fn formula_list(&mut self, terminator: &Tok) -> PResult<Vec<Formula>> {
        let mut out = Vec::new();
        if self.peek() == terminator {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else if self.peek() == terminator {
                return Ok(out);
            } else {
                return self.unexpected(&["`,`", &terminator.describe()]);
            }
        }
    }
}

/// Parses a single closed-or-open formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a term. Nothing is bound, so every identifier is a function symbol.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}
