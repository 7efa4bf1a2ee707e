//! Parsers for the expression languages of the command line: differential
//! operators in `t`, `D`, `C`, quasipolynomials in `x` with `e(r)` factors,
//! plain polynomials in `w`, and bare scalars.
//!
//! Grammar (shared shape):
//!   expr   := ['-'] term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*
//!   factor := atom ('^' int)?
//!   atom   := variable | scalar | 'e' '(' expr ')' | '(' expr ')'
//!
//! `t` admits negative powers; everything else only nonnegative ones.
//! Division is defined when the divisor is a nonzero scalar.

use std::fmt;

use winfty::{DOp, Poly, QuasiPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(String),
    Name(char),
}

struct Lexer {
    tokens: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let tok = match c {
            ' ' | '\t' | '\n' => {
                pos += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                tokens.push((start, Tok::Int(bytes[start..pos].iter().collect())));
                continue;
            }
            't' | 'D' | 'C' | 'x' | 'w' | 'e' | 'i' => Tok::Name(c),
            other => return err(pos, format!("unexpected character '{other}'")),
        };
        tokens.push((pos, tok));
        pos += 1;
    }
    Ok(Lexer {
        tokens,
        end: bytes.len(),
    })
}

/// What the variable letters mean in the current language.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Lang {
    /// t, D, C with values in the operator algebra.
    Operator,
    /// polynomial variable + e(r) factors; the char is the variable letter.
    Quasi(char),
}

/// Values during elaboration: operators carry DOp, the rest QuasiPoly.
#[derive(Clone)]
enum Value {
    Op(DOp),
    Qp(QuasiPoly),
}

impl Value {
    fn add(self, other: Value, at: usize) -> Result<Value, ParseError> {
        match (self, other) {
            (Value::Op(a), Value::Op(b)) => Ok(Value::Op(a.add(&b))),
            (Value::Qp(a), Value::Qp(b)) => Ok(Value::Qp(a.add(&b))),
            _ => err(at, "mixed expression kinds"),
        }
    }

    fn sub(self, other: Value, at: usize) -> Result<Value, ParseError> {
        match (self, other) {
            (Value::Op(a), Value::Op(b)) => Ok(Value::Op(a.sub(&b))),
            (Value::Qp(a), Value::Qp(b)) => Ok(Value::Qp(a.sub(&b))),
            _ => err(at, "mixed expression kinds"),
        }
    }

    fn neg(self) -> Value {
        match self {
            Value::Op(a) => Value::Op(a.neg()),
            Value::Qp(a) => Value::Qp(a.scale(&Scalar::from_int(-1))),
        }
    }

    /// The scalar content, when the value is a bare constant.
    fn as_scalar(&self) -> Option<Scalar> {
        match self {
            Value::Op(a) => {
                if !a.central().is_zero() {
                    return None;
                }
                let mut modes = a.modes();
                match modes.next() {
                    None => Some(Scalar::zero()),
                    Some((0, f)) if f.is_constant() && modes.next().is_none() => {
                        Some(f.coeff(0))
                    }
                    _ => None,
                }
            }
            Value::Qp(q) => {
                if q.is_zero() {
                    return Some(Scalar::zero());
                }
                let mut terms = q.terms();
                match terms.next() {
                    Some((r, p)) if r.is_zero() && p.is_constant() && terms.next().is_none() => {
                        Some(p.coeff(0))
                    }
                    _ => None,
                }
            }
        }
    }

    fn mul(self, other: Value, at: usize) -> Result<Value, ParseError> {
        // scalar scaling is always defined, even for central parts
        if let Some(s) = self.as_scalar() {
            return Ok(match other {
                Value::Op(b) => Value::Op(b.scale(&s)),
                Value::Qp(b) => Value::Qp(b.scale(&s)),
            });
        }
        if let Some(s) = other.as_scalar() {
            return Ok(match self {
                Value::Op(a) => Value::Op(a.scale(&s)),
                Value::Qp(a) => Value::Qp(a.scale(&s)),
            });
        }
        match (self, other) {
            (Value::Op(a), Value::Op(b)) => match a.compose(&b) {
                Ok(p) => Ok(Value::Op(p)),
                Err(_) => err(at, "C cannot appear inside a product"),
            },
            (Value::Qp(a), Value::Qp(b)) => Ok(Value::Qp(a.mul(&b))),
            _ => err(at, "mixed expression kinds"),
        }
    }

    fn div(self, other: Value, at: usize) -> Result<Value, ParseError> {
        let Some(s) = other.as_scalar() else {
            return err(at, "division is only defined by scalars");
        };
        if s.is_zero() {
            return err(at, "division by zero");
        }
        let inv = s.inv().expect("nonzero");
        Ok(match self {
            Value::Op(a) => Value::Op(a.scale(&inv)),
            Value::Qp(a) => Value::Qp(a.scale(&inv)),
        })
    }
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    end: usize,
    cursor: usize,
    lang: Lang,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.tokens.get(self.cursor)
    }

    fn next_pos(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<usize, ParseError> {
        match self.bump() {
            Some((p, t)) if t == tok => Ok(p),
            Some((p, _)) => err(p, format!("expected {what}")),
            None => err(self.end, format!("expected {what}")),
        }
    }

    fn parse_expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = match self.peek() {
            Some((_, Tok::Minus)) => {
                self.bump();
                self.parse_term()?.neg()
            }
            _ => self.parse_term()?,
        };
        loop {
            match self.peek() {
                Some((p, Tok::Plus)) => {
                    let at = *p;
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = acc.add(rhs, at)?;
                }
                Some((p, Tok::Minus)) => {
                    let at = *p;
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = acc.sub(rhs, at)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some((p, Tok::Star)) => {
                    let at = *p;
                    self.bump();
                    let rhs = self.parse_factor()?;
                    acc = acc.mul(rhs, at)?;
                }
                Some((p, Tok::Slash)) => {
                    let at = *p;
                    self.bump();
                    let rhs = self.parse_factor()?;
                    acc = acc.div(rhs, at)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_int(&mut self) -> Result<(usize, i64), ParseError> {
        let mut negative = false;
        let mut at = self.next_pos();
        if matches!(self.peek(), Some((_, Tok::Minus))) {
            negative = true;
            self.bump();
        }
        match self.bump() {
            Some((p, Tok::Int(digits))) => {
                at = p;
                let value: i64 = digits
                    .parse()
                    .map_err(|_| ParseError {
                        position: p,
                        message: "integer out of range".into(),
                    })?;
                Ok((at, if negative { -value } else { value }))
            }
            Some((p, _)) => err(p, "expected integer"),
            None => err(at, "expected integer"),
        }
    }

    fn parse_factor(&mut self) -> Result<Value, ParseError> {
        let (atom_pos, atom, is_t) = self.parse_atom()?;
        if !matches!(self.peek(), Some((_, Tok::Caret))) {
            return Ok(atom);
        }
        self.bump();
        let (exp_pos, exponent) = self.parse_int()?;
        if is_t {
            return Ok(Value::Op(DOp::t_power(exponent)));
        }
        if exponent < 0 {
            return if let Some(s) = atom.as_scalar() {
                if s.is_zero() {
                    err(exp_pos, "division by zero")
                } else {
                    let inv = s.inv().expect("nonzero");
                    let mut acc = Scalar::one();
                    for _ in 0..(-exponent) {
                        acc *= &inv;
                    }
                    Ok(self.constant(acc))
                }
            } else {
                err(exp_pos, "only t and scalars admit negative powers")
            };
        }
        let mut acc = self.constant(Scalar::one());
        for _ in 0..exponent {
            acc = acc.mul(atom.clone(), atom_pos)?;
        }
        Ok(acc)
    }

    fn constant(&self, s: Scalar) -> Value {
        match self.lang {
            Lang::Operator => Value::Op(DOp::scalar(s)),
            Lang::Quasi(_) => Value::Qp(QuasiPoly::constant(s)),
        }
    }

    /// Returns (position, value, is_bare_t) so the caller can treat `t^k`
    /// directly.
    fn parse_atom(&mut self) -> Result<(usize, Value, bool), ParseError> {
        match self.bump() {
            Some((p, Tok::Int(digits))) => {
                let value: i64 = digits.parse().map_err(|_| ParseError {
                    position: p,
                    message: "integer out of range".into(),
                })?;
                Ok((p, self.constant(Scalar::from_int(value)), false))
            }
            Some((p, Tok::Name('i'))) => Ok((p, self.constant(Scalar::i()), false)),
            Some((p, Tok::Name(c))) => match self.lang {
                Lang::Operator => match c {
                    't' => Ok((p, Value::Op(DOp::t_power(1)), true)),
                    'D' => Ok((p, Value::Op(DOp::euler()), false)),
                    'C' => Ok((p, Value::Op(DOp::central_element(Scalar::one())), false)),
                    other => err(p, format!("'{other}' is not valid in an operator expression")),
                },
                Lang::Quasi(var) => {
                    if c == var {
                        Ok((
                            p,
                            Value::Qp(QuasiPoly::from_poly(Poly::var())),
                            false,
                        ))
                    } else if c == 'e' && var == 'x' {
                        self.expect(Tok::LParen, "'(' after e")?;
                        let inner = self.parse_expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        let Some(r) = inner.as_scalar() else {
                            return err(p, "exponent of e(...) must be a scalar");
                        };
                        Ok((p, Value::Qp(QuasiPoly::exponential(r)), false))
                    } else {
                        err(p, format!("'{c}' is not valid here"))
                    }
                }
            },
            Some((p, Tok::LParen)) => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok((p, inner, false))
            }
            Some((p, _)) => err(p, "expected an atom"),
            None => err(self.end, "unexpected end of input"),
        }
    }
}

fn run_parser(text: &str, lang: Lang) -> Result<Value, ParseError> {
    let lexer = lex(text)?;
    let mut parser = Parser {
        tokens: lexer.tokens,
        end: lexer.end,
        cursor: 0,
        lang,
    };
    let value = parser.parse_expr()?;
    if let Some((p, _)) = parser.peek() {
        return err(*p, "trailing input");
    }
    Ok(value)
}

/// Parse an operator expression into normal form.
pub fn parse_operator(text: &str) -> Result<DOp, ParseError> {
    match run_parser(text, Lang::Operator)? {
        Value::Op(a) => Ok(a),
        Value::Qp(_) => unreachable!("operator language yields operators"),
    }
}

/// Parse a quasipolynomial in `x` with `e(r)` exponentials.
pub fn parse_quasipoly(text: &str) -> Result<QuasiPoly, ParseError> {
    match run_parser(text, Lang::Quasi('x'))? {
        Value::Qp(q) => Ok(q),
        Value::Op(_) => unreachable!(),
    }
}

/// Parse a plain polynomial in `w`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let value = run_parser(text, Lang::Quasi('w'))?;
    let Value::Qp(q) = value else { unreachable!() };
    if q.is_zero() {
        return Ok(Poly::zero());
    }
    let mut terms = q.terms();
    match terms.next() {
        Some((r, p)) if r.is_zero() && terms.next().is_none() => Ok(p.clone()),
        _ => err(0, "expected a polynomial in w"),
    }
}

/// Parse a bare scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let value = run_parser(text, Lang::Quasi('x'))?;
    value
        .as_scalar()
        .ok_or_else(|| ParseError {
            position: 0,
            message: "expected a scalar".into(),
        })
}
