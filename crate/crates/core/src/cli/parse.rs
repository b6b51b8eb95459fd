//! Expression language for differential forms.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' (nat | primary))*
//! primary := rational | 'x' nat | 'dx' nat | '(' expr ')'
//!          | op '(' expr ')' | 'witten' '[' rational ';' expr ']' '(' expr ')'
//! op      := d | star | codiff | laplacian | homotopy | grad | curl | div
//! ```
//!
//! `a ^ k` with a natural-number literal `k` is a power; `^` followed by any
//! other operand is the wedge product, so `dx1^dx2` is a 2-blade. `*`
//! multiplies by functions and wedges forms of positive degree.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::exterior::{self, DifferentialForm};
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: &'static str,
    pub message: String,
    pub position: Position,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

/// Evaluation failure, positioned at the offending node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub error: Error,
    pub position: Position,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.error, self.position)
    }
}

impl std::error::Error for EvalError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    D,
    Star,
    Codiff,
    Laplacian,
    Homotopy,
    Witten { t: Rational, f: Box<Expr> },
    Grad,
    Curl,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Literal(Rational),
    /// zero-based coordinate index
    Var(usize),
    /// zero-based blade indices, in written order
    Blade(Vec<usize>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Wedge(Box<Expr>, Box<Expr>),
    Apply(Operator, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub position: Position,
}

impl Expr {
    /// Largest one-based coordinate index mentioned anywhere in the tree.
    pub fn max_index(&self) -> usize {
        match &self.kind {
            ExprKind::Literal(_) => 0,
            ExprKind::Var(i) => i + 1,
            ExprKind::Blade(ix) => ix.iter().map(|i| i + 1).max().unwrap_or(0),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.max_index(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Wedge(a, b) => {
                a.max_index().max(b.max_index())
            }
            ExprKind::Apply(op, a) => {
                let inner = match op {
                    Operator::Witten { f, .. } => f.max_index(),
                    _ => 0,
                };
                inner.max(a.max_index())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number { value: Rational, natural: bool },
    Var(usize),
    Blade(usize),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semicolon,
    Eof,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn tokenize(mut self) -> Result<Vec<(Token, Position)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let pos = self.pos();
            let Some(&c) = self.chars.peek() else {
                out.push((Token::Eof, pos));
                return Ok(out);
            };
            let tok = match c {
                '0'..='9' => {
                    let numer: BigInt = self.digits().parse().expect("digits");
                    self.skip_ws();
                    if self.chars.peek() == Some(&'/') {
                        self.bump();
                        self.skip_ws();
                        let den = self.digits();
                        if den.is_empty() {
                            return Err(syntax(self.pos(), "expected denominator after '/'"));
                        }
                        let den: BigInt = den.parse().expect("digits");
                        if den.is_zero() {
                            return Err(syntax(pos, "zero denominator"));
                        }
                        Token::Number {
                            value: Rational::new(numer, den),
                            natural: false,
                        }
                    } else {
                        Token::Number {
                            value: Rational::from_integer(numer),
                            natural: true,
                        }
                    }
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut word = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if !(c.is_ascii_alphabetic() || c == '_') {
                            break;
                        }
                        word.push(c);
                        self.bump();
                    }
                    let digits = self.digits();
                    match (word.as_str(), digits.is_empty()) {
                        ("x", false) => Token::Var(parse_index(&digits, pos)?),
                        ("dx", false) => Token::Blade(parse_index(&digits, pos)?),
                        (_, true) => Token::Ident(word),
                        _ => return Err(syntax(pos, &format!("unknown identifier '{word}{digits}'"))),
                    }
                }
                _ => {
                    self.bump();
                    match c {
                        '+' => Token::Plus,
                        '-' | '\u{2212}' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        '(' => Token::LParen,
                        ')' => Token::RParen,
                        '[' => Token::LBracket,
                        ']' => Token::RBracket,
                        ';' => Token::Semicolon,
                        other => return Err(syntax(pos, &format!("unexpected character '{other}'"))),
                    }
                }
            };
            out.push((tok, pos));
        }
    }
}

fn syntax(position: Position, message: &str) -> ParseError {
    ParseError {
        kind: "syntax",
        message: message.to_string(),
        position,
    }
}

fn parse_index(digits: &str, pos: Position) -> Result<usize, ParseError> {
    digits.parse::<usize>().map_err(|_| syntax(pos, "index too large"))
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Position {
        self.tokens[self.at].1
    }

    fn next(&mut self) -> (Token, Position) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(syntax(pos, &format!("expected {what}")))
        }
    }

    fn check_index(&self, one_based: usize, pos: Position) -> Result<usize, ParseError> {
        if one_based == 0 || one_based > self.dim {
            return Err(ParseError {
                kind: "index_out_of_range",
                message: format!("index {one_based} outside 1..{}", self.dim),
                position: pos,
            });
        }
        Ok(one_based - 1)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Token::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Token::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                position: pos,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Star {
            let pos = self.pos();
            self.next();
            let rhs = self.unary()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                position: pos,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            let pos = self.pos();
            self.next();
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                position: pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.primary()?;
        while *self.peek() == Token::Caret {
            let pos = self.pos();
            self.next();
            if let Token::Number { value, natural } = self.peek().clone() {
                let npos = self.pos();
                if !natural {
                    return Err(syntax(npos, "exponent must be a natural number"));
                }
                self.next();
                let e = value
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| syntax(npos, "exponent too large"))?;
                lhs = Expr {
                    kind: ExprKind::Pow(Box::new(lhs), e),
                    position: pos,
                };
                continue;
            }
            let rhs = self.primary()?;
            lhs = match (lhs.kind, rhs.kind) {
                (ExprKind::Blade(mut a), ExprKind::Blade(b)) => {
                    a.extend(b);
                    if a.len() > self.dim {
                        return Err(ParseError {
                            kind: "degree_overflow",
                            message: format!("blade of degree {} exceeds dimension {}", a.len(), self.dim),
                            position: pos,
                        });
                    }
                    Expr {
                        kind: ExprKind::Blade(a),
                        position: lhs.position,
                    }
                }
                (lk, rk) => Expr {
                    kind: ExprKind::Wedge(
                        Box::new(Expr {
                            kind: lk,
                            position: lhs.position,
                        }),
                        Box::new(Expr {
                            kind: rk,
                            position: rhs.position,
                        }),
                    ),
                    position: pos,
                },
            };
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.next();
        let kind = match tok {
            Token::Number { value, .. } => ExprKind::Literal(value),
            Token::Var(i) => ExprKind::Var(self.check_index(i, pos)?),
            Token::Blade(i) => ExprKind::Blade(vec![self.check_index(i, pos)?]),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                return Ok(inner);
            }
            Token::Ident(name) => {
                let op = match name.as_str() {
                    "d" => Operator::D,
                    "star" => Operator::Star,
                    "codiff" => Operator::Codiff,
                    "laplacian" => Operator::Laplacian,
                    "homotopy" => Operator::Homotopy,
                    "grad" => Operator::Grad,
                    "curl" => Operator::Curl,
                    "div" => Operator::Div,
                    "witten" => {
                        self.expect(Token::LBracket, "'[' after witten")?;
                        let t = self.signed_rational()?;
                        self.expect(Token::Semicolon, "';'")?;
                        let f = self.expr()?;
                        self.expect(Token::RBracket, "']'")?;
                        Operator::Witten { t, f: Box::new(f) }
                    }
                    other => return Err(syntax(pos, &format!("unknown operator '{other}'"))),
                };
                self.expect(Token::LParen, "'(' after operator")?;
                let arg = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                ExprKind::Apply(op, Box::new(arg))
            }
            Token::Eof => return Err(syntax(pos, "unexpected end of input")),
            _ => return Err(syntax(pos, "expected an operand")),
        };
        Ok(Expr { kind, position: pos })
    }

    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = if *self.peek() == Token::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            (Token::Number { value, .. }, _) => Ok(if negative { -value } else { value }),
            (_, pos) => Err(syntax(pos, "expected a rational parameter")),
        }
    }
}

/// Parse `src` as a form expression in `dim` variables.
pub fn parse_form(src: &str, dim: usize) -> Result<Expr, ParseError> {
    let tokens = Lexer::new(src).tokenize()?;
    let mut parser = Parser { tokens, at: 0, dim };
    let expr = parser.expr()?;
    if *parser.peek() != Token::Eof {
        return Err(syntax(parser.pos(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Evaluate an expression to a form on ℝ^`dim`.
pub fn evaluate(expr: &Expr, dim: usize) -> Result<DifferentialForm, EvalError> {
    let at = |error: Error| EvalError {
        error,
        position: expr.position,
    };
    let form = match &expr.kind {
        ExprKind::Literal(v) => DifferentialForm::constant(dim, v.clone()),
        ExprKind::Var(i) => DifferentialForm::scalar(Polynomial::var(dim, *i)),
        ExprKind::Blade(ix) => DifferentialForm::blade(dim, ix).map_err(at)?,
        ExprKind::Neg(a) => -evaluate(a, dim)?,
        ExprKind::Add(a, b) => evaluate(a, dim)?.checked_add(&evaluate(b, dim)?).map_err(at)?,
        ExprKind::Sub(a, b) => evaluate(a, dim)?.checked_add(&-evaluate(b, dim)?).map_err(at)?,
        ExprKind::Mul(a, b) => {
            let (a, b) = (evaluate(a, dim)?, evaluate(b, dim)?);
            match (a.as_scalar(), b.as_scalar()) {
                (Some(f), _) => b.mul_scalar(&f),
                (_, Some(g)) => a.mul_scalar(&g),
                _ => a.wedge(&b).map_err(at)?,
            }
        }
        ExprKind::Pow(a, e) => {
            let base = evaluate(a, dim)?;
            let f = base.as_scalar().ok_or_else(|| {
                at(Error::DegreeMismatch {
                    expected: 0,
                    found: base.degree(),
                })
            })?;
            DifferentialForm::scalar(f.pow(*e))
        }
        ExprKind::Wedge(a, b) => evaluate(a, dim)?.wedge(&evaluate(b, dim)?).map_err(at)?,
        ExprKind::Apply(op, a) => {
            let w = evaluate(a, dim)?;
            match op {
                Operator::D => w.d(),
                Operator::Star => w.star(),
                Operator::Codiff => w.codiff(),
                Operator::Laplacian => w.laplacian(),
                Operator::Homotopy => w.homotopy().map_err(at)?,
                Operator::Witten { t, f } => {
                    let fw = evaluate(f, dim)?;
                    let f = fw.as_scalar().ok_or_else(|| EvalError {
                        error: Error::DegreeMismatch {
                            expected: 0,
                            found: fw.degree(),
                        },
                        position: f.position,
                    })?;
                    w.witten_d(&f, t).map_err(at)?
                }
                Operator::Grad => exterior::grad(&w).map_err(at)?,
                Operator::Curl => exterior::curl(&w).map_err(at)?,
                Operator::Div => exterior::div(&w).map_err(at)?,
            }
        }
    };
    Ok(form)
}

/// Parse a polynomial written in the expression language.
pub fn parse_polynomial(src: &str, dim: usize) -> Result<Polynomial, String> {
    let expr = parse_form(src, dim).map_err(|e| e.to_string())?;
    let form = evaluate(&expr, dim).map_err(|e| e.to_string())?;
    form.as_scalar()
        .ok_or_else(|| format!("'{src}' is a {}-form, not a polynomial", form.degree()))
}
