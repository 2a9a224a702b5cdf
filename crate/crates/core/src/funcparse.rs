//! Expressions in one variable `x`, used for the target function and tolerance.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := expr ('+' | '-') expr          left-assoc
//!         | expr ('*' | '/') expr          left-assoc
//!         | '-' expr                       prefix
//!         | expr '^' expr                  right-assoc, binds tightest
//!         | number | 'x' | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | tan | exp | log | sqrt | abs | tanh
//! number := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//!
//! So `-x^2` is `-(x^2)` and `2^3^2` is `2^(3^2)`. Multiplication must be
//! explicit: `2x` is rejected.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
    Tanh,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Abs,
        Func::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Tanh => "tanh",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, v: f64) -> Result<f64, EvalError> {
        let out = match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Exp => v.exp(),
            Func::Log => {
                if v <= 0.0 {
                    return Err(EvalError::Domain { func: self.name(), arg: v });
                }
                v.ln()
            }
            Func::Sqrt => {
                if v < 0.0 {
                    return Err(EvalError::Domain { func: self.name(), arg: v });
                }
                v.sqrt()
            }
            Func::Abs => v.abs(),
            Func::Tanh => v.tanh(),
        };
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }

    fn right_assoc(self) -> bool {
        matches!(self, BinOp::Pow)
    }

    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

const NEG_PRECEDENCE: u8 = 3;
const ATOM_PRECEDENCE: u8 = 5;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {offset}")]
    UnexpectedChar { ch: char, offset: usize },
    #[error("unexpected {found} at byte {offset}, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str, offset: usize },
    #[error("unknown identifier {name:?} at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("malformed number {text:?} at byte {offset}")]
    BadNumber { text: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { offset, .. }
            | ParseError::UnexpectedToken { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::BadNumber { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{func}({arg}) is outside the domain")]
    Domain { func: &'static str, arg: f64 },
    #[error("evaluation produced a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Op(c) => write!(f, "operator '{c}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v = text
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ParseError::BadNumber { text: text.to_string(), offset: start })?;
                out.push((Tok::Num(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Tok::Op(b as char), i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError::UnexpectedChar { ch, offset: i });
            }
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let (tok, offset) = self.peek();
        ParseError::UnexpectedToken { found: tok.to_string(), expected, offset: *offset }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek().0 == want {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    // Precedence climbing: consume binary operators binding at least `min_prec`.
    fn expr(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let op = match self.peek().0 {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                Tok::Op('^') => BinOp::Pow,
                Tok::End | Tok::RParen => break,
                _ => return Err(self.unexpected("an operator")),
            };
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.next();
            let next_min = if op.right_assoc() { prec } else { prec + 1 };
            let rhs = self.expr(next_min)?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let (tok, offset) = self.next();
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Op('-') => Ok(Expr::Neg(Box::new(self.expr(NEG_PRECEDENCE + 1)?))),
            Tok::LParen => {
                let inner = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == "x" {
                    return Ok(Expr::Var);
                }
                let func = Func::from_name(&name)
                    .ok_or(ParseError::UnknownIdentifier { name, offset })?;
                self.expect(Tok::LParen, "'(' after function name")?;
                let arg = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            other => {
                Err(ParseError::UnexpectedToken { found: other.to_string(), expected: "an operand", offset })
            }
        }
    }
}

/// Parses `src` into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let e = p.expr(0)?;
    if p.peek().0 != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Expr {
    /// Evaluates at `x`. Any non-finite intermediate is an error.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval(x)?;
                let b = r.eval(x)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, arg) => f.apply(arg.eval(x)?)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// True when the tree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Neg(_) => NEG_PRECEDENCE,
            Expr::Binary(op, ..) => op.precedence(),
            _ => ATOM_PRECEDENCE,
        }
    }
}

pub fn eval(e: &Expr, x: f64) -> Result<f64, EvalError> {
    e.eval(x)
}

/// Prints with the minimum parentheses needed to re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                child(f, e, e.precedence() < NEG_PRECEDENCE)
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                let lp = l.precedence();
                let rp = r.precedence();
                child(f, l, lp < p || (op.right_assoc() && lp == p))?;
                write!(f, "{}", op.symbol())?;
                child(f, r, rp < p || (!op.right_assoc() && rp == p))
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, x: f64) -> f64 {
        parse(src).unwrap().eval(x).unwrap()
    }

    #[test]
    fn simple_tree() {
        assert_eq!(
            parse("sin(x)+1").unwrap(),
            Expr::Binary(
                BinOp::Add,
                Box::new(Expr::Call(Func::Sin, Box::new(Expr::Var))),
                Box::new(Expr::Num(1.0))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("2^3^2", 0.0), 512.0);
        assert_eq!(ev("-x^2", 3.0), -9.0);
        assert_eq!(ev("1-2-3", 0.0), -4.0);
        assert_eq!(ev("8/4/2", 0.0), 1.0);
        assert_eq!(ev("1+2*3", 0.0), 7.0);
        assert_eq!(ev("(1+2)*3", 0.0), 9.0);
        assert_eq!(ev("-2*3", 0.0), -6.0);
        assert_eq!(ev("2^-1", 0.0), 0.5);
        assert_eq!(ev("--x", 4.0), 4.0);
        assert_eq!(ev("2*-x", 4.0), -8.0);
    }

    #[test]
    fn numbers() {
        assert_eq!(ev("1.5e2", 0.0), 150.0);
        assert_eq!(ev("2E-1", 0.0), 0.2);
        assert_eq!(ev(".5", 0.0), 0.5);
        assert!(matches!(parse("1.2.3"), Err(ParseError::BadNumber { offset: 0, .. })));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(ev("x", 2.5), 2.5);
        assert!((ev("sin(x)", std::f64::consts::FRAC_PI_2) - 1.0).abs() < 1e-15);
        assert_eq!(parse("exp(x)").unwrap().eval(1000.0), Err(EvalError::NonFinite));
        assert!(matches!(parse("log(x)").unwrap().eval(0.0), Err(EvalError::Domain { func: "log", .. })));
        assert!(matches!(parse("sqrt(x)").unwrap().eval(-1.0), Err(EvalError::Domain { .. })));
        assert_eq!(parse("1/x").unwrap().eval(0.0), Err(EvalError::NonFinite));
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("2x").unwrap_err().offset(), 1);
        assert_eq!(
            parse("foo(x)").unwrap_err(),
            ParseError::UnknownIdentifier { name: "foo".into(), offset: 0 }
        );
        assert_eq!(parse("1 + $").unwrap_err(), ParseError::UnexpectedChar { ch: '$', offset: 4 });
        assert_eq!(parse("(1+2").unwrap_err().offset(), 4);
        assert_eq!(parse("1+").unwrap_err().offset(), 2);
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert_eq!(parse("sin x").unwrap_err().offset(), 4);
        assert_eq!(parse("1)").unwrap_err().offset(), 1);
    }

    #[test]
    fn display_minimal_parens() {
        for (src, shown) in [
            ("-x^2", "-x^2.0"),
            ("(-x)^2", "(-x)^2.0"),
            ("(2^3)^2", "(2.0^3.0)^2.0"),
            ("2^3^2", "2.0^3.0^2.0"),
            ("1-(2-3)", "1.0-(2.0-3.0)"),
            ("(1-2)-3", "1.0-2.0-3.0"),
            ("-(x+1)", "-(x+1.0)"),
        ] {
            let e = parse(src).unwrap();
            assert_eq!(e.to_string(), shown);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn constant_detection() {
        assert!(parse("5").unwrap().is_constant());
        assert!(parse("sin(2)*3").unwrap().is_constant());
        assert!(!parse("x-1").unwrap().is_constant());
    }
}
