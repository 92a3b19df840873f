//! Expression mini-language for user-supplied symbols.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" unary)?
//! atom   := number ["i"] | "z" | "i" | "pi" | "e"
//!         | func "(" expr ")" | "(" expr ")"
//! func   := exp | log | sqrt | sin | cos
//! ```
//!
//! `log` and `sqrt` use principal branches. Integer-valued constant exponents are evaluated by
//! repeated multiplication, any other exponent as `exp(b log a)`.

use crate::error::{Error, Result};
use crate::numerics::{PrecComplex, Precision};
use rug::float::Constant;
use rug::Float;

#[derive(Clone, Debug)]
pub enum Expr {
    Z,
    Const(PrecComplex),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i64),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

impl Expr {
    pub fn eval(&self, z: &PrecComplex) -> PrecComplex {
        match self {
            Expr::Z => z.clone(),
            Expr::Const(c) => c.clone(),
            Expr::Neg(a) => -a.eval(z),
            Expr::Add(a, b) => a.eval(z) + b.eval(z),
            Expr::Sub(a, b) => a.eval(z) - b.eval(z),
            Expr::Mul(a, b) => a.eval(z) * b.eval(z),
            Expr::Div(a, b) => a.eval(z) / b.eval(z),
            Expr::PowInt(a, k) => a.eval(z).powi(*k),
            Expr::Pow(a, b) => a.eval(z).powc(&b.eval(z)),
            Expr::Call(f, a) => {
                let v = a.eval(z);
                match f {
                    Func::Exp => v.exp(),
                    Func::Log => v.ln(),
                    Func::Sqrt => v.sqrt(),
                    Func::Sin => {
                        let i = PrecComplex::i(v.precision());
                        let e1 = (&i * &v).exp();
                        let e2 = (-(&i * &v)).exp();
                        (e1 - e2) / (&i + &i)
                    }
                    Func::Cos => {
                        let i = PrecComplex::i(v.precision());
                        let e1 = (&i * &v).exp();
                        let e2 = (-(&i * &v)).exp();
                        let two = PrecComplex::from_f64(v.precision(), 2.0, 0.0);
                        (e1 + e2) / two
                    }
                }
            }
        }
    }

    /// True when the expression does not reference `z`.
    fn is_constant(&self) -> bool {
        match self {
            Expr::Z => false,
            Expr::Const(_) => true,
            Expr::Neg(a) | Expr::PowInt(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            if i < cs.len() && (cs[i] == 'e' || cs[i] == 'E') {
                let mut j = i + 1;
                if j < cs.len() && (cs[j] == '+' || cs[j] == '-') {
                    j += 1;
                }
                if j < cs.len() && cs[j].is_ascii_digit() {
                    i = j;
                    while i < cs.len() && cs[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Tok::Num(cs[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' at offset {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    prec: Precision,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let exp = self.unary()?;
        if exp.is_constant() {
            let v = exp.eval(&PrecComplex::zero(self.prec));
            if v.im.is_zero() && v.re.is_integer() && v.re.to_f64().abs() < 1e6 {
                return Ok(Expr::PowInt(Box::new(base), v.re.to_f64() as i64));
            }
        }
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn atom(&mut self) -> Result<Expr> {
        let p = self.prec;
        match self.bump() {
            Some(Tok::Num(s)) => {
                let v = Float::parse(&s).map_err(|e| Error::Parse(format!("bad number '{s}': {e}")))?;
                let v = Float::with_val(p.bits(), v);
                if matches!(self.peek(), Some(Tok::Ident(id)) if id == "i") {
                    self.pos += 1;
                    Ok(Expr::Const(PrecComplex::new(Float::new(p.bits()), v)))
                } else {
                    Ok(Expr::Const(PrecComplex::from_real(v)))
                }
            }
            Some(Tok::Ident(id)) => match id.as_str() {
                "z" => Ok(Expr::Z),
                "i" => Ok(Expr::Const(PrecComplex::i(p))),
                "pi" => Ok(Expr::Const(PrecComplex::from_real(Float::with_val(p.bits(), Constant::Pi)))),
                "e" => Ok(Expr::Const(PrecComplex::one(p).exp())),
                name => {
                    let f = match name {
                        "exp" => Func::Exp,
                        "log" | "ln" => Func::Log,
                        "sqrt" => Func::Sqrt,
                        "sin" => Func::Sin,
                        "cos" => Func::Cos,
                        _ => return Err(Error::Parse(format!("unknown identifier '{name}'"))),
                    };
                    if !self.eat_op('(') {
                        return Err(Error::Parse(format!("expected '(' after {name}")));
                    }
                    let arg = self.expr()?;
                    if !self.eat_op(')') {
                        return Err(Error::Parse(format!("missing ')' after argument of {name}")));
                    }
                    Ok(Expr::Call(f, Box::new(arg)))
                }
            },
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses an expression in `z`, with constants held at precision `p`.
pub fn parse(src: &str, p: Precision) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { toks, pos: 0, prec: p };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(e)
}
