//! Recursive-descent parser for rational expressions.
//!
//! Grammar:
//!   expr   := term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*
//!   factor := base ('^' integer)?
//!   base   := integer | ident | '(' expr ')' | '-' factor
//!
//! `t` is always the distinguished variable; parameter names come from
//! the variable declaration; `Y` is reserved for algebraic inputs.

use septel::ore::{ore_mul, OreKind, OrePoly};
use septel::{Error, MPoly, Rat, RatFunc, Result, VarUniverse, T_VAR};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>, // token, line, column (1-based)
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        let (l, co) = (line, col);
        match c {
            '\n' => {
                it.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                it.next();
                col += 1;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Int(s), l, co));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), l, co));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                it.next();
                col += 1;
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push((t, l, co));
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unexpected character '{}' at line {}, column {}",
                    other, l, co
                )))
            }
        }
    }
    Ok(toks)
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Lexer {
            src,
            toks: lex(src)?,
        })
    }
}

/// Expression AST; exponent is restricted to an integer literal.
#[derive(Debug, Clone)]
pub enum Expr {
    Int(String),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        let (l, c) = self.here();
        Error::InvalidInput(format!("{} at line {}, column {}", what, l, c))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    e = Expr::Div(Box::new(e), Box::new(self.factor()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let neg = matches!(self.peek(), Some(Tok::Minus));
            if neg {
                self.bump();
            }
            match self.bump() {
                Some(Tok::Int(s)) => {
                    let raw: i64 = s
                        .parse()
                        .map_err(|_| self.err("exponent out of range"))?;
                    let e = if neg { -raw } else { raw };
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.bump();
                Ok(Expr::Int(s))
            }
            Some(Tok::Ident(s)) => {
                self.bump();
                Ok(Expr::Var(s))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => Err(self.err("expected integer, variable, '(' or '-'")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let lx = Lexer::new(src)?;
    let end = {
        let mut line = 1;
        let mut col = 1;
        for ch in lx.src.chars() {
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    };
    let mut p = Parser {
        toks: lx.toks,
        pos: 0,
        end,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Lower an AST to a rational function over the declared variables.
/// `extra` maps additional reserved names (e.g. "Y") to indices.
pub fn lower(e: &Expr, u: &VarUniverse, extra: &[(&str, usize)]) -> Result<RatFunc> {
    match e {
        Expr::Int(s) => {
            let n: num_bigint::BigInt = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("integer '{}' out of range", s)))?;
            Ok(RatFunc::constant(Rat::from(n)))
        }
        Expr::Var(name) => {
            if let Some(&(_, idx)) = extra.iter().find(|(n, _)| n == name) {
                return Ok(RatFunc::var(idx));
            }
            match u.index_of(name) {
                Some(idx) => Ok(RatFunc::var(idx)),
                None => Err(Error::InvalidInput(format!(
                    "unknown variable '{}' (declare parameters with --vars)",
                    name
                ))),
            }
        }
        Expr::Add(a, b) => Ok(lower(a, u, extra)?.add(&lower(b, u, extra)?)),
        Expr::Sub(a, b) => Ok(lower(a, u, extra)?.sub(&lower(b, u, extra)?)),
        Expr::Mul(a, b) => Ok(lower(a, u, extra)?.mul(&lower(b, u, extra)?)),
        Expr::Div(a, b) => {
            let d = lower(b, u, extra)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            lower(a, u, extra)?.div(&d)
        }
        Expr::Pow(b, e) => {
            let base = lower(b, u, extra)?;
            let mag = e.unsigned_abs() as u32;
            let p = if base.is_polynomial() {
                RatFunc::from_poly(base.num().pow(mag))
            } else {
                let mut acc = RatFunc::one();
                for _ in 0..mag {
                    acc = acc.mul(&base);
                }
                acc
            };
            if *e < 0 {
                if p.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                RatFunc::one().div(&p)
            } else {
                Ok(p)
            }
        }
        Expr::Neg(a) => Ok(lower(a, u, extra)?.neg()),
    }
}

/// Parse a rational function in t and the declared parameters.
pub fn parse_ratfunc(src: &str, u: &VarUniverse) -> Result<RatFunc> {
    lower(&parse(src)?, u, &[])
}

/// Parse a polynomial in the reserved indeterminate `Y` with rational
/// coefficients in t and the parameters; returns A_0..A_n (coefficients
/// of Y^0..Y^n) cleared to a common polynomial denominator.
pub fn parse_algebraic(src: &str, u: &VarUniverse) -> Result<Vec<MPoly>> {
    let yvar = u.num_vars(); // first index past t and the parameters
    let f = lower(&parse(src)?, u, &[("Y", yvar)])?;
    if !f.den().free_of(yvar) {
        return Err(Error::InvalidInput(
            "input must be polynomial in Y".into(),
        ));
    }
    // clear the (Y-free) denominator into the coefficients
    let num = f.num();
    let n = num.deg(yvar);
    if n <= 0 {
        return Err(Error::InvalidInput(
            "input must have positive degree in Y".into(),
        ));
    }
    Ok(num.coeffs_in(yvar))
}

/// Parse an Ore operator over Q(t): the generator symbol is `D`
/// (derivation) or `S` (shift) depending on `kind`; the only admissible
/// variable in coefficients is `t`.
pub fn parse_operator(src: &str, kind: OreKind) -> Result<OrePoly> {
    eval_op(&parse(src)?, kind)
}

fn op_int(kind: OreKind, s: &str) -> Result<OrePoly> {
    let n: num_bigint::BigInt = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("integer '{}' out of range", s)))?;
    OrePoly::from_scalar(kind, RatFunc::constant(Rat::from(n)))
}

fn eval_op(e: &Expr, kind: OreKind) -> Result<OrePoly> {
    match e {
        Expr::Int(s) => op_int(kind, s),
        Expr::Var(name) if name == kind.symbol() => Ok(OrePoly::gen(kind)),
        Expr::Var(name) if name == "t" => OrePoly::from_scalar(kind, RatFunc::var(T_VAR)),
        Expr::Var(name) => Err(Error::InvalidInput(format!(
            "operator must be written in t and {}; found '{}'",
            kind.symbol(),
            name
        ))),
        Expr::Add(a, b) => eval_op(a, kind)?.add(&eval_op(b, kind)?),
        Expr::Sub(a, b) => eval_op(a, kind)?.sub(&eval_op(b, kind)?),
        Expr::Mul(a, b) => ore_mul(&eval_op(a, kind)?, &eval_op(b, kind)?),
        Expr::Div(a, b) => {
            let d = eval_op(b, kind)?;
            if d.order() != 0 || d.is_zero() {
                return Err(Error::InvalidInput(
                    "operator division is only defined by nonzero order-0 operators".into(),
                ));
            }
            let inv = RatFunc::one().div(&d.coeff(0))?;
            ore_mul(&eval_op(a, kind)?, &OrePoly::from_scalar(kind, inv)?)
        }
        Expr::Pow(b, e) => {
            let base = eval_op(b, kind)?;
            if *e < 0 {
                if base.order() != 0 || base.is_zero() {
                    return Err(Error::InvalidInput(
                        "negative operator powers need a nonzero order-0 base".into(),
                    ));
                }
                let inv = RatFunc::one().div(&base.coeff(0))?;
                let unit = OrePoly::from_scalar(kind, inv)?;
                let mut acc = OrePoly::one(kind);
                for _ in 0..e.unsigned_abs() {
                    acc = ore_mul(&acc, &unit)?;
                }
                return Ok(acc);
            }
            let mut acc = OrePoly::one(kind);
            for _ in 0..*e {
                acc = ore_mul(&acc, &base)?;
            }
            Ok(acc)
        }
        Expr::Neg(a) => Ok(eval_op(a, kind)?.neg()),
    }
}
