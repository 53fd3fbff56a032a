//! Small arithmetic expression grammar used for fields, potentials,
//! generalized momenta and bivector coefficients.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | var | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables: `q<i>`, `p<i>` (base position and momentum), `x<i>` with the
//! aliases `I<i>` and `z<i>` (coordinates on `g*` or `h*`), `retr`/`imtr`
//! (real and imaginary part of the trace of the group element) and
//! `gre<r><c>`/`gim<r><c>` (matrix entries). Indices are one-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Q(usize),
    P(usize),
    X(usize),
    ReTrace,
    ImTrace,
    GroupRe(usize, usize),
    GroupIm(usize, usize),
}

impl Var {
    fn parse(name: &str) -> Option<Var> {
        match name {
            "retr" => return Some(Var::ReTrace),
            "imtr" => return Some(Var::ImTrace),
            _ => {}
        }
        let index = |digits: &str| -> Option<usize> {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
        };
        let entry = |digits: &str| -> Option<(usize, usize)> {
            let b = digits.as_bytes();
            if b.len() != 2 || !b.iter().all(u8::is_ascii_digit) || b[0] == b'0' || b[1] == b'0' {
                return None;
            }
            Some(((b[0] - b'1') as usize, (b[1] - b'1') as usize))
        };
        if let Some(rest) = name.strip_prefix("gre") {
            return entry(rest).map(|(r, c)| Var::GroupRe(r, c));
        }
        if let Some(rest) = name.strip_prefix("gim") {
            return entry(rest).map(|(r, c)| Var::GroupIm(r, c));
        }
        let (head, rest) = name.split_at(1);
        let i = index(rest)?;
        match head {
            "q" => Some(Var::Q(i)),
            "p" => Some(Var::P(i)),
            "x" | "I" | "z" => Some(Var::X(i)),
            _ => None,
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(
            self,
            Var::ReTrace | Var::ImTrace | Var::GroupRe(..) | Var::GroupIm(..)
        )
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q(i) => write!(f, "q{}", i + 1),
            Var::P(i) => write!(f, "p{}", i + 1),
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::ReTrace => write!(f, "retr"),
            Var::ImTrace => write!(f, "imtr"),
            Var::GroupRe(r, c) => write!(f, "gre{}{}", r + 1, c + 1),
            Var::GroupIm(r, c) => write!(f, "gim{}{}", r + 1, c + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Anything that can supply variable values.
pub trait VarSource {
    fn value(&self, var: Var) -> f64;
}

impl<F: Fn(Var) -> f64> VarSource for F {
    fn value(&self, var: Var) -> f64 {
        self(var)
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn constant(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn eval(&self, env: &dyn VarSource) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(v) => env.value(*v),
            Expr::Neg(a) => -a.eval(env),
            Expr::Add(a, b) => a.eval(env) + b.eval(env),
            Expr::Sub(a, b) => a.eval(env) - b.eval(env),
            Expr::Mul(a, b) => a.eval(env) * b.eval(env),
            Expr::Div(a, b) => a.eval(env) / b.eval(env),
            Expr::Pow(a, b) => {
                let base = a.eval(env);
                let e = b.eval(env);
                if e.fract() == 0.0 && e.abs() < 64.0 {
                    base.powi(e as i32)
                } else {
                    base.powf(e)
                }
            }
            Expr::Call(func, a) => {
                let v = a.eval(env);
                match func {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Fails with `ExpressionParse` if any variable is rejected by `allowed`.
    pub fn check_vars(&self, allowed: impl Fn(&Var) -> bool) -> Result<()> {
        match self.vars().into_iter().find(|v| !allowed(v)) {
            Some(v) => Err(Error::ExpressionParse {
                pos: 0,
                msg: format!("variable `{v}` is not available here"),
            }),
            None => Ok(()),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::ExpressionParse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                b'/' => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let func = match name {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "exp" => Some(Func::Exp),
                    "sqrt" => Some(Func::Sqrt),
                    _ => None,
                };
                if let Some(func) = func {
                    if self.peek() != Some(b'(') {
                        return Err(self.error("expected `(` after function name"));
                    }
                    self.pos += 1;
                    let arg = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.error("expected `)`"));
                    }
                    self.pos += 1;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                if name == "pi" {
                    return Ok(Expr::Num(std::f64::consts::PI));
                }
                Var::parse(name)
                    .map(Expr::Var)
                    .ok_or(Error::ExpressionParse {
                        pos: start,
                        msg: format!("unknown variable `{name}`"),
                    })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            digits(self);
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let exp_start = self.pos;
            digits(self);
            if self.pos == exp_start {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| Error::ExpressionParse {
                pos: start,
                msg: format!("bad number `{text}`"),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(v: Var) -> f64 {
        match v {
            Var::Q(i) => 1.0 + i as f64,
            Var::P(i) => -(i as f64) - 0.5,
            Var::X(i) => 10.0 * (i as f64 + 1.0),
            _ => 0.25,
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let e = Expr::parse("1 + 2*3 - 4/2").unwrap();
        assert_eq!(e.eval(&env), 5.0);
        let e = Expr::parse("2^3^2").unwrap();
        assert_eq!(e.eval(&env), 512.0);
        let e = Expr::parse("-x1^2").unwrap();
        assert_eq!(e.eval(&env), -100.0);
        let e = Expr::parse("(q1 + q2) * p1 + I2 - z1").unwrap();
        assert_eq!(e.eval(&env), 3.0 * -0.5 + 20.0 - 10.0);
        let e = Expr::parse("1.5e-1*retr + sqrt(4) + cos(0) + pi - pi").unwrap();
        assert!((e.eval(&env) - (0.15 * 0.25 + 3.0)).abs() < 1e-15);
    }

    #[test]
    fn variables_are_resolved() {
        let e = Expr::parse("q1*p2 + x3 + gre12 + gim21 + imtr").unwrap();
        assert_eq!(
            e.vars(),
            vec![
                Var::Q(0),
                Var::P(1),
                Var::X(2),
                Var::GroupRe(0, 1),
                Var::GroupIm(1, 0),
                Var::ImTrace
            ]
        );
        assert!(e.check_vars(|v| !v.is_group()).is_err());
        assert!(Expr::parse("q1 + x2")
            .unwrap()
            .check_vars(|v| !v.is_group())
            .is_ok());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1 +", "q0", "foo", "(1", "sin 1", "x1 x2", "3 $"] {
            assert!(
                matches!(Expr::parse(bad), Err(Error::ExpressionParse { .. })),
                "{bad}"
            );
        }
    }
}
