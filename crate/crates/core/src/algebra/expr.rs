//! Surface syntax for operator expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' nat)?
//! primary := ident | number | '(' expr ')'
//!          | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! Identifiers are `A Abar P X Q H D Dbar I` (operators) and `i a`
//! (scalars). Numbers are exact decimals (`3`, `0.25`). Division is only
//! defined by scalar monomials such as `2`, `a^2` or `4*i*a`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coefficient::{Coefficient, GaussianRational};
use super::symbolic::SymbolicOperator;
use crate::{Error, Result};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    A,
    Abar,
    P,
    X,
    Q,
    H,
    D,
    Dbar,
    I,
    /// The imaginary unit `i`.
    Imag,
    /// The lattice spacing `a`.
    Spacing,
}

impl Atom {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "A" => Atom::A,
            "Abar" => Atom::Abar,
            "P" => Atom::P,
            "X" => Atom::X,
            "Q" => Atom::Q,
            "H" => Atom::H,
            "D" => Atom::D,
            "Dbar" => Atom::Dbar,
            "I" => Atom::I,
            "i" => Atom::Imag,
            "a" => Atom::Spacing,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::A => "A",
            Atom::Abar => "Abar",
            Atom::P => "P",
            Atom::X => "X",
            Atom::Q => "Q",
            Atom::H => "H",
            Atom::D => "D",
            Atom::Dbar => "Dbar",
            Atom::I => "I",
            Atom::Imag => "i",
            Atom::Spacing => "a",
        }
    }

    /// True for atoms that are multiples of the identity.
    pub fn is_scalar(self) -> bool {
        matches!(self, Atom::I | Atom::Imag | Atom::Spacing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Atom(Atom),
    Number(BigRational),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, u32),
    Commutator(Box<Expression>, Box<Expression>),
    Anticommutator(Box<Expression>, Box<Expression>),
}

impl fmt::Display for Expression {
    /// Fully parenthesised prefix form, handy for checking parse trees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Atom(a) => write!(f, "{}", a.name()),
            Expression::Number(n) => write!(f, "{n}"),
            Expression::Neg(e) => write!(f, "(neg {e})"),
            Expression::Add(l, r) => write!(f, "(+ {l} {r})"),
            Expression::Sub(l, r) => write!(f, "(- {l} {r})"),
            Expression::Mul(l, r) => write!(f, "(* {l} {r})"),
            Expression::Div(l, r) => write!(f, "(/ {l} {r})"),
            Expression::Pow(b, n) => write!(f, "(^ {b} {n})"),
            Expression::Commutator(l, r) => write!(f, "[{l} {r}]"),
            Expression::Anticommutator(l, r) => write!(f, "{{{l} {r}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(BigRational),
    Sym(char),
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::Number(n) => format!("`{n}`"),
            Token::Sym(c) => format!("`{c}`"),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push((start, Token::Number(parse_decimal(&text[start..i], start)?)));
        } else if "+-*/^()[]{},".contains(c) {
            out.push((i, Token::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { offset: i, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

fn parse_decimal(s: &str, offset: usize) -> Result<BigRational> {
    let bad = || Error::Syntax { offset, message: format!("malformed number `{s}`") };
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty()) || frac_part.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(numer, denom))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Token::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Syntax {
                offset: self.offset(),
                message: format!("expected `{c}`, found {}", self.peek().describe()),
            })
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expression::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expression::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.eat('-') {
            return Ok(Expression::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let offset = self.offset();
        match self.bump().1 {
            Token::Number(n) if n.is_integer() && n >= BigRational::zero() => {
                let exp: u32 = n.to_integer().try_into().map_err(|_| Error::ExponentTooLarge(u32::MAX))?;
                if exp > MAX_EXPONENT {
                    return Err(Error::ExponentTooLarge(exp));
                }
                Ok(Expression::Pow(Box::new(base), exp))
            }
            t => Err(Error::Syntax {
                offset,
                message: format!("expected a non-negative integer exponent, found {}", t.describe()),
            }),
        }
    }

    fn primary(&mut self) -> Result<Expression> {
        let (offset, tok) = self.bump();
        match tok {
            Token::Ident(name) => match Atom::from_name(&name) {
                Some(atom) => Ok(Expression::Atom(atom)),
                None => Err(Error::UnknownIdentifier { name, offset }),
            },
            Token::Number(n) => Ok(Expression::Number(n)),
            Token::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Token::Sym(open @ ('[' | '{')) => {
                let lhs = self.expr()?;
                self.expect(',')?;
                let rhs = self.expr()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(Expression::Commutator(Box::new(lhs), Box::new(rhs)))
                } else {
                    self.expect('}')?;
                    Ok(Expression::Anticommutator(Box::new(lhs), Box::new(rhs)))
                }
            }
            t => Err(Error::Syntax { offset, message: format!("expected an operand, found {}", t.describe()) }),
        }
    }
}

/// Parses an operator expression.
pub fn parse(text: &str) -> Result<Expression> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Token::End {
        return Err(Error::Syntax { offset: p.offset(), message: format!("unexpected {}", p.peek().describe()) });
    }
    Ok(e)
}

impl std::str::FromStr for Expression {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

fn rational(n: i64, d: i64) -> Coefficient {
    Coefficient::constant(GaussianRational::from_ratio(n, d))
}

fn imag(n: i64, d: i64) -> GaussianRational {
    GaussianRational::new(BigRational::zero(), BigRational::new(n.into(), d.into()))
}

/// Normal form of a named generator in terms of `P`, `A`, `Abar`.
pub fn atom_normal_form(atom: Atom) -> SymbolicOperator {
    let a_inv = || Coefficient::monomial(GaussianRational::one(), -1);
    let shift = SymbolicOperator::shift;
    let id = SymbolicOperator::identity;
    match atom {
        Atom::A => shift(1),
        Atom::Abar => shift(-1),
        Atom::P => SymbolicOperator::momentum(),
        Atom::I => id(),
        Atom::Imag => SymbolicOperator::scalar(Coefficient::constant(GaussianRational::i())),
        Atom::Spacing => SymbolicOperator::scalar(Coefficient::spacing()),
        // (A - 1)/a
        Atom::D => (&shift(1) - &id()).scale(&a_inv()),
        // (1 - Abar)/a
        Atom::Dbar => (&id() - &shift(-1)).scale(&a_inv()),
        // (A - Abar)/(2ia) = -i/(2a) (A - Abar)
        Atom::X => (&shift(1) - &shift(-1)).scale(&Coefficient::monomial(imag(-1, 2), -1)),
        // Dbar - D = (2 - A - Abar)/a
        Atom::Q => (&(&id().scale(&rational(2, 1)) - &shift(1)) - &shift(-1)).scale(&a_inv()),
        Atom::H => {
            let x = atom_normal_form(Atom::X);
            let p = SymbolicOperator::momentum();
            &(&x * &x) + &(&p * &p)
        }
    }
}

/// Expands derived generators and rewrites to `sum c_{k,m}(a) P^k A^m`.
pub fn normal_form(e: &Expression) -> Result<SymbolicOperator> {
    Ok(match e {
        Expression::Atom(a) => atom_normal_form(*a),
        Expression::Number(n) => SymbolicOperator::scalar(Coefficient::constant(GaussianRational::real(n.clone()))),
        Expression::Neg(x) => -&normal_form(x)?,
        Expression::Add(l, r) => &normal_form(l)? + &normal_form(r)?,
        Expression::Sub(l, r) => &normal_form(l)? - &normal_form(r)?,
        Expression::Mul(l, r) => &normal_form(l)? * &normal_form(r)?,
        Expression::Div(l, r) => {
            let inv = normal_form(r)?.as_scalar().and_then(|c| c.inv_monomial()).ok_or(Error::NonScalarDivision)?;
            normal_form(l)?.scale(&inv)
        }
        Expression::Pow(b, n) => normal_form(b)?.pow(*n),
        Expression::Commutator(l, r) => normal_form(l)?.commutator(&normal_form(r)?),
        Expression::Anticommutator(l, r) => normal_form(l)?.anticommutator(&normal_form(r)?),
    })
}

/// Parses and normal-orders in one step.
pub fn normal_form_str(text: &str) -> Result<SymbolicOperator> {
    normal_form(&parse(text)?)
}
