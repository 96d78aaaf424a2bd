//! Parser for raw expression tokens (`3\frac{3}{5}`, `2x+1`, `\sqrt{2}`, `$`).

use super::expr::{Expr, Func};
use super::symbols::SymbolTable;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprParseError {
    pub pos: usize,
    pub message: String,
}

impl std::fmt::Display for ExprParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "expression error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ExprParseError {}

pub fn parse_expr(text: &str, st: &SymbolTable) -> Result<Expr, ExprParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = P { c: &chars, i: 0, st };
    p.skip_ws();
    let e = p.sum()?;
    p.skip_ws();
    if p.i < p.c.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct P<'a> {
    c: &'a [char],
    i: usize,
    st: &'a SymbolTable,
}

impl<'a> P<'a> {
    fn err(&self, m: &str) -> ExprParseError {
        ExprParseError { pos: self.i, message: m.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.c.get(self.i).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ') | Some('\t')) {
            self.i += 1;
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprParseError> {
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            if self.eat('+') {
                let rhs = self.product()?;
                acc = Expr::add2(acc, rhs);
            } else if self.eat('-') {
                let rhs = self.product()?;
                acc = Expr::sub(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprParseError> {
        self.skip_ws();
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    acc = Expr::mul2(acc, rhs);
                }
                Some('/') => {
                    self.i += 1;
                    let rhs = self.unary()?;
                    acc = Expr::div(acc, rhs);
                }
                // Implicit multiplication: `2x`, `2\pi`, `2(x+1)`, `x y`.
                Some(c) if c == '(' || c == '\\' || c.is_ascii_alphabetic() || c == '√' || c == 'π' => {
                    let rhs = self.unary()?;
                    acc = Expr::mul2(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprParseError> {
        self.skip_ws();
        if self.eat('-') {
            let e = self.unary()?;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            // `^{2}` and `^2` both appear in the wild.
            self.skip_ws();
            let exp = if self.eat('{') {
                let e = self.sum()?;
                if !self.eat('}') {
                    return Err(self.err("expected `}`"));
                }
                e
            } else {
                self.unary()?
            };
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.sum()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some('$') => {
                self.i += 1;
                Ok(Expr::Var(self.st.placeholder()))
            }
            Some('π') => {
                self.i += 1;
                Ok(Expr::Pi)
            }
            Some('√') => {
                self.i += 1;
                let inner = if self.eat('{') {
                    let e = self.sum()?;
                    if !self.eat('}') {
                        return Err(self.err("expected `}`"));
                    }
                    e
                } else {
                    self.atom()?
                };
                Ok(Expr::sqrt(inner))
            }
            Some('\\') => self.latex(),
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident(),
            _ => Err(self.err("expected expression atom")),
        }
    }

    fn latex(&mut self) -> Result<Expr, ExprParseError> {
        self.i += 1; // backslash
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.i += 1;
        }
        let name: String = self.c[start..self.i].iter().collect();
        match name.as_str() {
            "pi" => Ok(Expr::Pi),
            "frac" => {
                let a = self.braced()?;
                let b = self.braced()?;
                Ok(Expr::div(a, b))
            }
            "sqrt" => Ok(Expr::sqrt(self.braced()?)),
            other => Err(ExprParseError {
                pos: start,
                message: format!("unknown latex command `\\{}`", other),
            }),
        }
    }

    fn braced(&mut self) -> Result<Expr, ExprParseError> {
        self.skip_ws();
        if !self.eat('{') {
            return Err(self.err("expected `{`"));
        }
        let e = self.sum()?;
        if !self.eat('}') {
            return Err(self.err("expected `}`"));
        }
        Ok(e)
    }

    fn number(&mut self) -> Result<Expr, ExprParseError> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        let mut frac_digits = 0usize;
        if self.peek() == Some('.') {
            self.i += 1;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.i += 1;
                frac_digits += 1;
            }
        }
        let text: String = self.c[start..self.i].iter().filter(|&&c| c != '.').collect();
        if text.is_empty() {
            return Err(self.err("expected digits"));
        }
        let numer: BigInt = text.parse().map_err(|_| self.err("bad number"))?;
        let denom = BigInt::from(10u32).pow(frac_digits as u32);
        let mut out = Expr::Rat(BigRational::new(numer, denom));
        // Unit tick (`5'`) is dropped.
        self.eat('\'');
        // Mixed numbers: `3\frac{3}{5}` means 3 + 3/5.
        if self.peek() == Some('\\') {
            let save = self.i;
            if let Ok(f @ Expr::Div(..)) = self.latex() {
                out = Expr::add2(out, f);
            } else {
                self.i = save;
            }
        }
        Ok(out)
    }

    fn ident(&mut self) -> Result<Expr, ExprParseError> {
        let start = self.i;
        self.i += 1;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.i += 1;
        }
        let name: String = self.c[start..self.i].iter().collect();
        match name.as_str() {
            "pi" | "PI" | "Pi" => Ok(Expr::Pi),
            "sin" | "cos" | "tan" | "cot" | "sqrt" => {
                let f = match name.as_str() {
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "tan" => Func::Tan,
                    "cot" => Func::Cot,
                    _ => Func::Sqrt,
                };
                self.skip_ws();
                if !self.eat('(') {
                    return Err(self.err("expected `(` after function name"));
                }
                let inner = self.sum()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Expr::Func(f, Box::new(inner)))
            }
            _ => Ok(Expr::Var(self.st.user(&name))),
        }
    }
}

/// Exact rational from an integer/decimal token, if it is one.
pub fn numeral_rat(text: &str) -> Option<BigRational> {
    let st = SymbolTable::new();
    match super::expr::normalize(&parse_expr(text, &st).ok()?) {
        Expr::Rat(r) => Some(r),
        _ => None,
    }
}
