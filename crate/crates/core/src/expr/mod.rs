//! A small expression language for interval functions of one variable `X`.
//!
//! ```text
//! expr    = term , { ( "+" | "-" ) , term } ;
//! term    = power , { ( "*" | "/" ) , power } ;
//! power   = unary , { "^" , integer } ;
//! unary   = "-" , unary | primary ;
//! primary = "X" | number | interval
//!         | "m" , "(" , expr , ")" | "exp" , "(" , expr , ")"
//!         | "(" , expr , ")" ;
//! interval = "[" , signed , "," , signed , "]" ;
//! signed  = [ "+" | "-" ] , number ;
//! number  = digits , [ "." , digits ] , [ ( "e" | "E" ) , [ "+" | "-" ] , digits ]
//!         | "." , digits , [ exponent ] ;
//! integer = digits ;   (* at least 1 *)
//! ```
//!
//! Whitespace between tokens is ignored. There is no implicit
//! multiplication: `2X` is an error, write `2*X`.

mod eval;
mod parser;

use std::fmt;

use crate::interval::Interval;

pub use eval::{eval, eval_with, ExprFunction};
pub use parser::parse;

/// The grammar above, for help texts.
pub const GRAMMAR: &str = r#"expr     = term , { ( "+" | "-" ) , term } ;
term     = power , { ( "*" | "/" ) , power } ;
power    = unary , { "^" , integer } ;
unary    = "-" , unary | primary ;
primary  = "X" | number | interval
         | "m" , "(" , expr , ")" | "exp" , "(" , expr , ")"
         | "(" , expr , ")" ;
interval = "[" , signed , "," , signed , "]" ;
signed   = [ "+" | "-" ] , number ;
number   = digits , [ "." , digits ] , [ exponent ] | "." , digits , [ exponent ] ;
exponent = ( "e" | "E" ) , [ "+" | "-" ] , digits ;
integer  = digits ;  (* value >= 1 *)"#;

/// Byte range of a node in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Var,
    IntervalLit(Interval),
    /// Always non-negative; a leading minus parses as [`ExprKind::Neg`].
    RealLit(f64),
    Midpoint(Box<Expr>),
    Exp(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Structural equality; spans are ignored.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn var() -> Self {
        Expr::new(ExprKind::Var)
    }

    pub fn real(r: f64) -> Self {
        Expr::new(ExprKind::RealLit(r))
    }

    pub fn interval(x: Interval) -> Self {
        Expr::new(ExprKind::IntervalLit(x))
    }

    pub fn midpoint(e: Expr) -> Self {
        Expr::new(ExprKind::Midpoint(Box::new(e)))
    }

    pub fn exp(e: Expr) -> Self {
        Expr::new(ExprKind::Exp(Box::new(e)))
    }

    pub fn neg(e: Expr) -> Self {
        Expr::new(ExprKind::Neg(Box::new(e)))
    }

    pub fn add(l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Add(Box::new(l), Box::new(r)))
    }

    pub fn sub(l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Sub(Box::new(l), Box::new(r)))
    }

    pub fn mul(l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Mul(Box::new(l), Box::new(r)))
    }

    pub fn div(l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Div(Box::new(l), Box::new(r)))
    }

    pub fn pow(b: Expr, n: u32) -> Self {
        Expr::new(ExprKind::Pow(Box::new(b), n))
    }

    /// True when the tree contains no interval literal.
    pub fn is_interval_free(&self) -> bool {
        match &self.kind {
            ExprKind::IntervalLit(_) => false,
            ExprKind::Var | ExprKind::RealLit(_) => true,
            ExprKind::Midpoint(e) | ExprKind::Exp(e) | ExprKind::Neg(e) | ExprKind::Pow(e, _) => {
                e.is_interval_free()
            }
            ExprKind::Add(l, r) | ExprKind::Sub(l, r) | ExprKind::Mul(l, r) | ExprKind::Div(l, r) => {
                l.is_interval_free() && r.is_interval_free()
            }
        }
    }
}

/// Fully parenthesized form; reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Var => f.write_str("X"),
            ExprKind::IntervalLit(x) => write!(f, "[{},{}]", x.lo(), x.hi()),
            ExprKind::RealLit(r) => write!(f, "{r}"),
            ExprKind::Midpoint(e) => write!(f, "m({e})"),
            ExprKind::Exp(e) => write!(f, "exp({e})"),
            ExprKind::Neg(e) => write!(f, "-({e})"),
            ExprKind::Add(l, r) => write!(f, "({l} + {r})"),
            ExprKind::Sub(l, r) => write!(f, "({l} - {r})"),
            ExprKind::Mul(l, r) => write!(f, "({l} * {r})"),
            ExprKind::Div(l, r) => write!(f, "({l} / {r})"),
            ExprKind::Pow(b, n) => write!(f, "({b})^{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}
