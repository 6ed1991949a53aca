use super::{Expr, ExprKind, ParseError, Span};
use crate::interval::Interval;

/// Parses `src` into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const PRIMARY: &[&str] = &["`X`", "number", "`[`", "`m(`", "`exp(`", "`(`", "`-`"];

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Skips whitespace and consumes `c` if it comes next.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn node(&self, kind: ExprKind, start: usize) -> Expr {
        Expr {
            kind,
            span: Span {
                start,
                end: self.pos,
            },
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = self.node(ExprKind::Add(Box::new(lhs), Box::new(rhs)), start);
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = self.node(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), start);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power()?;
                lhs = self.node(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), start);
            } else if self.eat('/') {
                let rhs = self.power()?;
                lhs = self.node(ExprKind::Div(Box::new(lhs), Box::new(rhs)), start);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut base = self.unary()?;
        while self.eat('^') {
            self.skip_ws();
            let n = self.exponent()?;
            base = self.node(ExprKind::Pow(Box::new(base), n), start);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        let text = &self.rest()[..digits];
        match text.parse::<u32>() {
            Ok(n) if n >= 1 => {
                self.pos += digits;
                Ok(n)
            }
            _ => Err(self.error(&["positive integer exponent"])),
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(self.node(ExprKind::Neg(Box::new(inner)), start));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                // keep the parenthesized span for diagnostics
                let mut e = inner;
                e.span = Span {
                    start,
                    end: self.pos,
                };
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let lo = self.signed()?;
                self.expect(',')?;
                let hi_offset = {
                    self.skip_ws();
                    self.pos
                };
                let hi = self.signed()?;
                self.expect(']')?;
                match Interval::new(lo, hi) {
                    Ok(x) => Ok(self.node(ExprKind::IntervalLit(x), start)),
                    Err(_) => Err(ParseError {
                        offset: hi_offset,
                        expected: vec![format!("upper endpoint >= {lo}")],
                        found: format!("{hi}"),
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.number()?;
                Ok(self.node(ExprKind::RealLit(v), start))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let len = self
                    .rest()
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                let ident = &self.rest()[..len];
                let kind = match ident {
                    "X" => {
                        self.pos += len;
                        return Ok(self.node(ExprKind::Var, start));
                    }
                    "m" => ExprKind::Midpoint as fn(Box<Expr>) -> ExprKind,
                    "exp" => ExprKind::Exp as fn(Box<Expr>) -> ExprKind,
                    _ => return Err(self.error(PRIMARY)),
                };
                self.pos += len;
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(self.node(kind(Box::new(arg)), start))
            }
            _ => Err(self.error(PRIMARY)),
        }
    }

    fn signed(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            false
        };
        let v = self.number()?;
        Ok(if negative { -v } else { v })
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let bytes = self.rest().as_bytes();
        let digits = |from: usize| bytes[from..].iter().take_while(|b| b.is_ascii_digit()).count();
        let int_len = digits(0);
        let mut len = int_len;
        let mut frac_len = 0;
        if bytes.get(len) == Some(&b'.') {
            frac_len = digits(len + 1);
            len += 1 + frac_len;
        }
        if int_len == 0 && frac_len == 0 {
            return Err(self.error(&["number"]));
        }
        if matches!(bytes.get(len), Some(b'e' | b'E')) {
            let mut k = len + 1;
            if matches!(bytes.get(k), Some(b'+' | b'-')) {
                k += 1;
            }
            let exp_len = digits(k);
            if exp_len == 0 {
                self.pos += k;
                return Err(self.error(&["exponent digits"]));
            }
            len = k + exp_len;
        }
        let text = &self.rest()[..len];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += len;
                Ok(v)
            }
            _ => Err(self.error(&["finite number"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn catalog_shapes() {
        let e = parse("m(X)+0.5*(X-m(X))").unwrap();
        let expected = Expr::add(
            Expr::midpoint(Expr::var()),
            Expr::mul(Expr::real(0.5), Expr::sub(Expr::var(), Expr::midpoint(Expr::var()))),
        );
        assert_eq!(e, expected);

        let e = parse("[1,2]*exp(-X)").unwrap();
        assert_eq!(
            e,
            Expr::mul(Expr::interval(iv(1.0, 2.0)), Expr::exp(Expr::neg(Expr::var())))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("1+2*X").unwrap(),
            Expr::add(Expr::real(1.0), Expr::mul(Expr::real(2.0), Expr::var()))
        );
        // unary minus binds tighter than ^
        assert_eq!(parse("-X^2").unwrap(), Expr::pow(Expr::neg(Expr::var()), 2));
        assert_eq!(parse("X^2^3").unwrap(), Expr::pow(Expr::pow(Expr::var(), 2), 3));
        assert_eq!(
            parse("X-1-2").unwrap(),
            Expr::sub(Expr::sub(Expr::var(), Expr::real(1.0)), Expr::real(2.0))
        );
        assert_eq!(
            parse(" [ -1 , +2.5e1 ] / X ").unwrap(),
            Expr::div(Expr::interval(iv(-1.0, 25.0)), Expr::var())
        );
        assert_eq!(parse(".5").unwrap(), Expr::real(0.5));
    }

    #[test]
    fn error_offsets() {
        let e = parse("X+").unwrap_err();
        assert_eq!(e.offset, 2);
        assert_eq!(e.found, "end of input");
        assert_eq!(parse("[1,2").unwrap_err().offset, 4);
        assert_eq!(parse("(X").unwrap_err().offset, 2);
        assert_eq!(parse("2X").unwrap_err().offset, 1);
        assert_eq!(parse("X^0").unwrap_err().offset, 2);
        assert_eq!(parse("X^-1").unwrap_err().offset, 2);
        assert_eq!(parse("sin(X)").unwrap_err().offset, 0);
        assert_eq!(parse("[2,1]").unwrap_err().offset, 3);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("1e").unwrap_err().offset, 2);
        assert_eq!(parse("1e999").unwrap_err().offset, 0);
        assert_eq!(parse("Xé").unwrap_err().found, "`é`");
    }

    #[test]
    fn spans() {
        let e = parse("X + m(X)").unwrap();
        assert_eq!(e.span, Span { start: 0, end: 8 });
        if let ExprKind::Add(_, r) = &e.kind {
            assert_eq!(r.span, Span { start: 4, end: 8 });
        } else {
            panic!("not an addition");
        }
    }

    #[test]
    fn printing_round_trips() {
        for src in ["m(X)+0.5*(X-m(X))", "[1,2]*exp(-X)", "-X^2", "X/[-3,-1]", "(X+1)^3*2"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }
}
