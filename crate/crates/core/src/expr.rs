//! The expression language shared by the CLI and the identity manifest.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = "-" unary | power
//! power   = atom [ "^" ["-"] integer ]
//! atom    = integer | "q" | "Y" "[" integer "," integer "]"
//!         | "minor" "(" list "," list ")" | "det" "(" integer ")"
//!         | "b" "(" integer ")" | "gamma" "(" expr ")" | "tau" "(" expr ")"
//!         | "torus" "(" args ";" [args] ")" "(" expr ")" | "(" expr ")"
//! list    = "[" integer { "," integer } "]"
//! args    = expr { "," expr }
//! ```
//!
//! `*` is the noncommutative product. `/` and negative powers need a
//! nonzero scalar on the right.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::minors::{b_element, gamma, quantum_determinant, quantum_minor, MinorId};
use crate::morphisms::{torus_automorphism, transpose_automorphism, TorusParam};
use crate::pbw::{Algebra, Element};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Gen(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Minor(Vec<usize>, Vec<usize>),
    Det(usize),
    B(usize),
    Gamma(Box<Expr>),
    Tau(Box<Expr>),
    Torus(Vec<Expr>, Vec<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Bad(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(_) => "integer".into(),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) | Tok::Bad(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Vec<(Tok, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            let tok = if "+-*/^()[],;".contains(c) { Tok::Sym(c) } else { Tok::Bad(c) };
            out.push((tok, pos));
            i += 1;
        }
    }
    out.push((Tok::End, chars.len() + 1));
    out
}

const ATOM_START: &[&str] = &[
    "integer", "'q'", "'Y'", "'minor'", "'det'", "'b'", "'gamma'", "'tau'", "'torus'", "'('", "'-'",
];

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.at += 1;
                Ok(v)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let pos = self.pos();
        let v = self.integer()?;
        v.to_usize().ok_or(Error::Syntax {
            position: pos,
            expected: vec!["small nonnegative integer".into()],
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let neg = self.eat_sym('-');
            let pos = self.pos();
            let e = self.integer()?;
            let e = e.to_i64().filter(|e| e.unsigned_abs() <= u32::MAX as u64).ok_or(Error::Syntax {
                position: pos,
                expected: vec!["exponent of moderate size".into()],
            })?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn list(&mut self) -> Result<Vec<usize>> {
        self.expect_sym('[')?;
        let mut v = vec![self.small()?];
        while self.eat_sym(',') {
            v.push(self.small()?);
        }
        self.expect_sym(']')?;
        Ok(v)
    }

    fn args(&mut self, stop: char) -> Result<Vec<Expr>> {
        let mut v = Vec::new();
        if *self.peek() == Tok::Sym(stop) {
            return Ok(v);
        }
        v.push(self.expr()?);
        while self.eat_sym(',') {
            v.push(self.expr()?);
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().clone();
        match tok {
            Tok::Int(v) => {
                self.at += 1;
                Ok(Expr::Int(v))
            }
            Tok::Sym('(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.at += 1;
                match name.as_str() {
                    "q" => Ok(Expr::Q),
                    "Y" => {
                        self.expect_sym('[')?;
                        let i = self.small()?;
                        self.expect_sym(',')?;
                        let a = self.small()?;
                        self.expect_sym(']')?;
                        Ok(Expr::Gen(i, a))
                    }
                    "minor" => {
                        self.expect_sym('(')?;
                        let rows = self.list()?;
                        self.expect_sym(',')?;
                        let cols = self.list()?;
                        self.expect_sym(')')?;
                        Ok(Expr::Minor(rows, cols))
                    }
                    "det" | "b" => {
                        self.expect_sym('(')?;
                        let k = self.small()?;
                        self.expect_sym(')')?;
                        Ok(if name == "det" { Expr::Det(k) } else { Expr::B(k) })
                    }
                    "gamma" | "tau" => {
                        self.expect_sym('(')?;
                        let e = Box::new(self.expr()?);
                        self.expect_sym(')')?;
                        Ok(if name == "gamma" { Expr::Gamma(e) } else { Expr::Tau(e) })
                    }
                    "torus" => {
                        self.expect_sym('(')?;
                        let a = self.args(';')?;
                        self.expect_sym(';')?;
                        let b = self.args(')')?;
                        self.expect_sym(')')?;
                        self.expect_sym('(')?;
                        let e = self.expr()?;
                        self.expect_sym(')')?;
                        Ok(Expr::Torus(a, b, Box::new(e)))
                    }
                    _ => {
                        self.at -= 1;
                        Err(self.error(ATOM_START))
                    }
                }
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parses a whole expression; errors carry a 1-based character position.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text),
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let found = p.peek().describe();
        let mut expected = vec!["operator".to_string(), "end of input".to_string()];
        if found == "')'" {
            expected.insert(0, "matching '('".into());
        }
        return Err(Error::Syntax {
            position: p.pos(),
            expected,
        });
    }
    Ok(e)
}

fn scalar_of(x: &Element, what: &str) -> Result<RationalFunction> {
    x.as_scalar()
        .ok_or_else(|| Error::Eval(format!("{what} needs a scalar, got {x}")))
}

/// Evaluates in `alg`; `*` multiplies in the written order.
pub fn eval(e: &Expr, alg: &Algebra) -> Result<Element> {
    Ok(match e {
        Expr::Int(v) => alg.scalar(RationalFunction::constant(BigRational::from_integer(v.clone()))),
        Expr::Q => alg.scalar(alg.q().clone()),
        Expr::Gen(i, a) => alg.generator(*i, *a)?,
        Expr::Neg(x) => -eval(x, alg)?,
        Expr::Add(x, y) => eval(x, alg)?.checked_add(&eval(y, alg)?)?,
        Expr::Sub(x, y) => eval(x, alg)?.checked_sub(&eval(y, alg)?)?,
        Expr::Mul(x, y) => alg.multiply(&eval(x, alg)?, &eval(y, alg)?)?,
        Expr::Div(x, y) => {
            let d = scalar_of(&eval(y, alg)?, "division")?;
            eval(x, alg)?.scale(&d.inv()?)
        }
        Expr::Pow(x, k) => {
            let base = eval(x, alg)?;
            if *k >= 0 {
                alg.pow(&base, *k as u32)?
            } else {
                let s = scalar_of(&base, "a negative power")?;
                alg.scalar(s.inv()?.powi(i32::try_from(-k).map_err(|_| Error::Eval("exponent too large".into()))?)?)
            }
        }
        Expr::Minor(r, c) => quantum_minor(alg, &MinorId::from_slices(r, c)?)?,
        Expr::Det(n) => {
            let m = alg.shape().require_square()?;
            if *n != m {
                return Err(Error::ShapeMismatch(format!("det({n}) in a {} algebra", alg.shape())));
            }
            quantum_determinant(alg)?
        }
        Expr::B(i) => b_element(alg, *i)?,
        Expr::Gamma(x) => gamma(alg, &eval(x, alg)?)?,
        Expr::Tau(x) => transpose_automorphism(alg)?.apply(alg, &eval(x, alg)?)?,
        Expr::Torus(a, b, x) => {
            let scalars = |v: &[Expr]| {
                v.iter()
                    .map(|s| scalar_of(&eval(s, alg)?, "a torus parameter"))
                    .collect::<Result<Vec<_>>>()
            };
            let h = TorusParam::new(scalars(a)?, scalars(b)?)?;
            torus_automorphism(alg, &h)?.apply(alg, &eval(x, alg)?)?
        }
    })
}

/// Parses and evaluates.
pub fn evaluate(text: &str, alg: &Algebra) -> Result<Element> {
    eval(&parse(text)?, alg)
}

fn write_args(f: &mut fmt::Formatter<'_>, v: &[Expr]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    let s: Vec<String> = v.iter().map(usize::to_string).collect();
    write!(f, "[{}]", s.join(","))
}

/// Fully parenthesized; parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Q => f.write_str("q"),
            Expr::Gen(i, a) => write!(f, "Y[{i},{a}]"),
            Expr::Neg(x) => write!(f, "(-{x})"),
            Expr::Add(x, y) => write!(f, "({x} + {y})"),
            Expr::Sub(x, y) => write!(f, "({x} - {y})"),
            Expr::Mul(x, y) => write!(f, "({x}*{y})"),
            Expr::Div(x, y) => write!(f, "({x}/{y})"),
            Expr::Pow(x, k) => write!(f, "({x})^{k}"),
            Expr::Minor(r, c) => {
                f.write_str("minor(")?;
                write_list(f, r)?;
                f.write_str(",")?;
                write_list(f, c)?;
                f.write_str(")")
            }
            Expr::Det(n) => write!(f, "det({n})"),
            Expr::B(i) => write!(f, "b({i})"),
            Expr::Gamma(x) => write!(f, "gamma({x})"),
            Expr::Tau(x) => write!(f, "tau({x})"),
            Expr::Torus(a, b, x) => {
                f.write_str("torus(")?;
                write_args(f, a)?;
                f.write_str("; ")?;
                write_args(f, b)?;
                write!(f, ")({x})")
            }
        }
    }
}
