//! Small expression language for prescribed functions of `x`.
//!
//! Grammar: numbers, `x`, named parameters, `pi`, `e`, the operators
//! `+ - * / ^` (right-associative power, binding tighter than unary minus)
//! and the functions `sin cos tan asin acos atan sinh cosh tanh acosh exp
//! ln log sqrt abs`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::momentum::ScalarFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
    Acosh,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "asin" | "arcsin" => Func::Asin,
            "acos" | "arccos" => Func::Acos,
            "atan" | "arctan" => Func::Atan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "acosh" | "arccosh" => Func::Acosh,
            "exp" => Func::Exp,
            "ln" | "log" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Atan => "atan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Acosh => "acosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn apply(self, a: Jet) -> Jet {
        match self {
            Func::Sin => a.sin(),
            Func::Cos => a.cos(),
            Func::Tan => a.tan(),
            Func::Asin => a.asin(),
            Func::Acos => a.acos(),
            Func::Atan => a.atan(),
            Func::Sinh => a.sinh(),
            Func::Cosh => a.cosh(),
            Func::Tanh => a.tanh(),
            Func::Acosh => a.acosh(),
            Func::Exp => a.exp(),
            Func::Ln => a.ln(),
            Func::Sqrt => a.sqrt(),
            Func::Abs => a.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Param(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

const NEG_PREC: u8 = 3;

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, toks: lex(src)?, pos: 0 };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((off, _)) => Err(Error::Syntax { offset: off, message: "unexpected trailing input".into() }),
        }
    }

    /// Names of all parameters, sorted.
    pub fn params(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Param(p) => out.push(p.clone()),
                Expr::Neg(a) | Expr::Call(_, a) => walk(a, out),
                Expr::Bin(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::Num(_) | Expr::X => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Fails on the first parameter missing from `table`.
    pub fn check(&self, table: &BTreeMap<String, f64>) -> Result<()> {
        for p in self.params() {
            if !table.contains_key(&p) {
                return Err(Error::UnknownIdentifier(p));
            }
        }
        Ok(())
    }

    /// Evaluates on a jet; unknown parameters evaluate to NaN, so call
    /// [`Expr::check`] first.
    pub fn eval_jet(&self, x: Jet, table: &BTreeMap<String, f64>) -> Jet {
        match self {
            Expr::Num(v) => Jet::constant(*v),
            Expr::X => x,
            Expr::Param(p) => Jet::constant(table.get(p).copied().unwrap_or(f64::NAN)),
            Expr::Neg(a) => -a.eval_jet(x, table),
            Expr::Call(f, a) => f.apply(a.eval_jet(x, table)),
            Expr::Bin(op, a, b) => {
                let l = a.eval_jet(x, table);
                let r = b.eval_jet(x, table);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                    BinOp::Pow => {
                        if r.is_constant() {
                            l.powf(r.v)
                        } else {
                            l.pow(r)
                        }
                    }
                }
            }
        }
    }

    pub fn eval(&self, x: f64, table: &BTreeMap<String, f64>) -> Result<f64> {
        self.check(table)?;
        let v = self.eval_jet(Jet::constant(x), table).v;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { x, reason: format!("`{self}` is not finite") })
        }
    }

    /// The expression as a differentiable function of `x`.
    pub fn to_scalar_fn(&self, table: &BTreeMap<String, f64>) -> Result<ScalarFn> {
        self.check(table)?;
        let e = Arc::new(self.clone());
        let t = Arc::new(table.clone());
        Ok(ScalarFn::from_jet(move |x| e.eval_jet(x, &t)))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(op, _, _) => op.precedence(),
            Expr::Neg(_) => NEG_PREC,
            Expr::Num(v) if *v < 0.0 => NEG_PREC,
            _ => 5,
        }
    }
}

fn fmt_num(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v.is_nan() {
        write!(f, "(0/0)")
    } else if v.is_infinite() {
        write!(f, "{}(1/0)", if v < 0.0 { "-" } else { "" })
    } else {
        write!(f, "{v:?}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(v) => fmt_num(*v, f),
            Expr::X => write!(f, "x"),
            Expr::Param(p) => write!(f, "{p}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, NEG_PREC + 1, f)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                match op {
                    BinOp::Pow => {
                        wrap(a, p + 1, f)?;
                        write!(f, "^")?;
                        wrap(b, p, f)
                    }
                    _ => {
                        wrap(a, p, f)?;
                        write!(f, " {} ", op.symbol())?;
                        wrap(b, p + 1, f)
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v = text
                .parse::<f64>()
                .map_err(|_| Error::Syntax { offset: start, message: format!("malformed number `{text}`") })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^".contains(c) {
            if c == '*' && b.get(i + 1) == Some(&b'*') {
                out.push((i, Tok::Op('^')));
                i += 2;
            } else {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
        } else if c == '(' {
            out.push((i, Tok::LParen));
            i += 1;
        } else if c == ')' {
            out.push((i, Tok::RParen));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or(c);
            return Err(Error::Syntax { offset: i, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.toks.get(self.pos).map(|(o, t)| (*o, t))
    }

    fn end(&self) -> usize {
        self.src.len()
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some((_, Tok::Op(c @ ('+' | '-')))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some((_, Tok::Op(c @ ('*' | '/')))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some((_, Tok::Op('-'))) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some((_, Tok::Op('+'))) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some((_, Tok::Op('^'))) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let end = self.end();
        match self.next() {
            Some((_, Tok::Num(v))) => Ok(Expr::Num(v)),
            Some((off, Tok::Ident(name))) => {
                if let Some((_, Tok::LParen)) = self.peek() {
                    let func = Func::lookup(&name)
                        .ok_or_else(|| Error::Syntax { offset: off, message: format!("unknown function `{name}`") })?;
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.close(off)?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                Ok(match name.as_str() {
                    "x" => Expr::X,
                    "pi" => Expr::Num(std::f64::consts::PI),
                    "e" => Expr::Num(std::f64::consts::E),
                    _ => Expr::Param(name),
                })
            }
            Some((off, Tok::LParen)) => {
                let e = self.expr()?;
                self.close(off)?;
                Ok(e)
            }
            Some((off, t)) => Err(Error::Syntax { offset: off, message: format!("unexpected {t:?}") }),
            None => Err(Error::Syntax { offset: end, message: "unexpected end of input".into() }),
        }
    }

    fn close(&mut self, open: usize) -> Result<()> {
        match self.next() {
            Some((_, Tok::RParen)) => Ok(()),
            Some((off, _)) => Err(Error::Syntax { offset: off, message: format!("expected `)` for `(` at {open}") }),
            None => Err(Error::Syntax { offset: self.end(), message: format!("unclosed `(` at {open}") }),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

/// Parses `name=value` pairs.
pub fn parse_params<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for p in pairs {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected name=value, got `{p}`")))?;
        let k = k.trim();
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidInput(format!("bad parameter name `{k}`")));
        }
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad value for `{k}`: `{v}`")))?;
        out.insert(k.to_string(), v);
    }
    Ok(out)
}
