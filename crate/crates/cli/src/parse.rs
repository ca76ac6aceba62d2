//! Expression grammar for phase-space symbols.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" exponent)?
//! atom   := integer | "i" | "x" | "p" | "hbar" | "g"
//!         | "exp" "(" expr ")" | "(" expr ")"
//! exponent := "-"? integer | "(" "-"? integer ")"
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Rationals are
//! written `a/b`. Division and negative powers are only allowed on single
//! monomials free of x and g.

use moyal_core::{ExpQuadratic, GaussianRational, HbarScalar, PhaseSymbol, Powers};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exponents above this are rejected to keep expansion bounded.
const MAX_EXPONENT: i64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent at byte {offset} is not a quadratic form r*p^2 + s*p*x + t*x^2")]
    NonQuadraticExponent { offset: usize },
    #[error("negative power of x at byte {offset}")]
    NegativeXPower { offset: usize },
    #[error("negative power of g at byte {offset}")]
    NegativeGPower { offset: usize },
    #[error("divisor at byte {offset} must be a single monomial")]
    NonMonomialDivisor { offset: usize },
    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::NonQuadraticExponent { offset }
            | ParseError::NegativeXPower { offset }
            | ParseError::NegativeGPower { offset }
            | ParseError::NonMonomialDivisor { offset }
            | ParseError::DivisionByZero { offset } => *offset,
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..i].parse().expect("ascii digits"))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                i += 1;
                match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let ch = text[start..].chars().next().unwrap_or('?');
                        return Err(syntax(start, format!("unexpected character '{ch}'")));
                    }
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X,
    P,
    Hbar,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    I,
    Var(Variable),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
    Exp(Box<Node>),
}

/// An expression with the byte offset of its leading token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub expr: Expr,
    pub offset: usize,
}

impl Node {
    fn new(expr: Expr, offset: usize) -> Self {
        Self { expr, offset }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let offset = lhs.offset;
            lhs = Node::new(op(Box::new(lhs), Box::new(rhs)), offset);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => Expr::Mul,
                Tok::Slash => Expr::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let offset = lhs.offset;
            lhs = Node::new(op(Box::new(lhs), Box::new(rhs)), offset);
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Tok::Minus {
            let (_, offset) = self.bump();
            let inner = self.unary()?;
            return Ok(Node::new(Expr::Neg(Box::new(inner)), offset));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exponent = self.exponent()?;
        let offset = base.offset;
        Ok(Node::new(Expr::Pow(Box::new(base), exponent), offset))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let (tok, offset) = self.bump();
        let Tok::Int(n) = tok else {
            return Err(syntax(offset, "expected an integer exponent"));
        };
        let n: i64 = match i64::try_from(&n) {
            Ok(n) if n <= MAX_EXPONENT => n,
            _ => return Err(syntax(offset, format!("exponent larger than {MAX_EXPONENT}"))),
        };
        if parens {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(if negative { -n } else { n })
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let (tok, offset) = self.bump();
        let expr = match tok {
            Tok::Int(n) => Expr::Int(n),
            Tok::Ident(name) => match name.as_str() {
                "i" => Expr::I,
                "x" => Expr::Var(Variable::X),
                "p" => Expr::Var(Variable::P),
                "hbar" => Expr::Var(Variable::Hbar),
                "g" => Expr::Var(Variable::G),
                "exp" => {
                    self.expect(Tok::LParen, "'(' after exp")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Expr::Exp(Box::new(arg))
                }
                other => return Err(syntax(offset, format!("unknown identifier '{other}'"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                return Ok(Node::new(inner.expr, offset));
            }
            Tok::Eof => return Err(syntax(offset, "unexpected end of input")),
            _ => return Err(syntax(offset, "expected a number, variable or '('")),
        };
        Ok(Node::new(expr, offset))
    }
}

/// Parse text into an expression tree.
pub fn parse_ast(text: &str) -> Result<Node, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let node = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(syntax(parser.offset(), "unexpected trailing input"));
    }
    Ok(node)
}

/// Parse text into its canonical symbol.
pub fn parse_expression(text: &str) -> Result<PhaseSymbol, ParseError> {
    eval(&parse_ast(text)?)
}

/// `1/m` for a single x- and g-free monomial `m`.
fn invert(value: &PhaseSymbol, offset: usize) -> Result<PhaseSymbol, ParseError> {
    if value.is_zero() {
        return Err(ParseError::DivisionByZero { offset });
    }
    let mut monomials = value.monomials();
    let (Some((e, m)), None) = (monomials.next(), monomials.next()) else {
        return Err(ParseError::NonMonomialDivisor { offset });
    };
    if !e.is_trivial() {
        return Err(ParseError::NonMonomialDivisor { offset });
    }
    if m.powers.xdeg > 0 {
        return Err(ParseError::NegativeXPower { offset });
    }
    if m.powers.gdeg > 0 {
        return Err(ParseError::NegativeGPower { offset });
    }
    let inv = m.coeff.inv().expect("nonzero monomial");
    Ok(PhaseSymbol::monomial(inv, Powers::new(0, -m.powers.pdeg, -m.powers.hdeg, 0)))
}

fn pow(base: &PhaseSymbol, n: u64) -> PhaseSymbol {
    let mut acc = PhaseSymbol::one();
    for _ in 0..n {
        acc = &acc * base;
    }
    acc
}

/// Laurent scalar in ħ from an x-, p- and g-free polynomial.
pub fn as_hbar_scalar(value: &PhaseSymbol) -> Option<HbarScalar> {
    if !value.is_polynomial() {
        return None;
    }
    let mut terms = Vec::new();
    for (_, m) in value.monomials() {
        if m.powers.xdeg != 0 || m.powers.pdeg != 0 || m.powers.gdeg != 0 {
            return None;
        }
        terms.push((m.powers.hdeg, m.coeff));
    }
    Some(HbarScalar::from_terms(terms))
}

/// Constant real rational, if `value` is one.
pub fn as_real_constant(value: &PhaseSymbol) -> Option<BigRational> {
    let scalar = as_hbar_scalar(value)?;
    if scalar.terms().any(|(k, _)| k != 0) {
        return None;
    }
    let c = scalar.coeff(0);
    c.is_real().then(|| c.re().clone())
}

fn quadratic_form(value: &PhaseSymbol, offset: usize) -> Result<ExpQuadratic, ParseError> {
    if !value.is_polynomial() {
        return Err(ParseError::NonQuadraticExponent { offset });
    }
    let (mut r, mut s, mut t) = (Vec::new(), Vec::new(), Vec::new());
    for (_, m) in value.monomials() {
        let slot = match (m.powers.xdeg, m.powers.pdeg, m.powers.gdeg) {
            (0, 2, 0) => &mut r,
            (1, 1, 0) => &mut s,
            (2, 0, 0) => &mut t,
            _ => return Err(ParseError::NonQuadraticExponent { offset }),
        };
        slot.push((m.powers.hdeg, m.coeff));
    }
    Ok(ExpQuadratic::new(HbarScalar::from_terms(r), HbarScalar::from_terms(s), HbarScalar::from_terms(t)))
}

/// Evaluate an expression tree to its canonical symbol.
pub fn eval(node: &Node) -> Result<PhaseSymbol, ParseError> {
    Ok(match &node.expr {
        Expr::Int(n) => {
            PhaseSymbol::constant(GaussianRational::real(BigRational::from_integer(n.clone())))
        }
        Expr::I => PhaseSymbol::i(),
        Expr::Var(v) => match v {
            Variable::X => PhaseSymbol::x(),
            Variable::P => PhaseSymbol::p(),
            Variable::Hbar => PhaseSymbol::hbar(),
            Variable::G => PhaseSymbol::g(),
        },
        Expr::Neg(a) => -eval(a)?,
        Expr::Add(a, b) => &eval(a)? + &eval(b)?,
        Expr::Sub(a, b) => &eval(a)? - &eval(b)?,
        Expr::Mul(a, b) => &eval(a)? * &eval(b)?,
        Expr::Div(a, b) => &eval(a)? * &invert(&eval(b)?, b.offset)?,
        Expr::Pow(base, n) => {
            let value = eval(base)?;
            if *n >= 0 {
                pow(&value, n.unsigned_abs())
            } else {
                pow(&invert(&value, base.offset)?, n.unsigned_abs())
            }
        }
        Expr::Exp(arg) => {
            let value = eval(arg)?;
            if value.is_zero() {
                PhaseSymbol::one()
            } else {
                PhaseSymbol::exp(quadratic_form(&value, arg.offset)?)
            }
        }
    })
}
