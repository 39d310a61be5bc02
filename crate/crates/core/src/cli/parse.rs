//! Polynomial expressions: integer literals, variables, `+ - * ^` and
//! parentheses. Multiplication must be written out.

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, RingRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// Decimal digits, reduced only when evaluated.
    Int(String),
    Var {
        name: String,
        position: usize,
    },
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().map(|x| x.1).collect()), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(parse_err(pos, format!("unexpected character '{other}'"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(parse_err(
                        self.pos(),
                        "implicit multiplication is not allowed; write '*'",
                    ));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(digits)) => {
                let e = digits
                    .parse::<u64>()
                    .map_err(|_| parse_err(pos, format!("exponent {digits} is too large")))?;
                if self.peek() == Some(&Tok::Caret) {
                    return Err(parse_err(self.pos(), "chained exponents need parentheses"));
                }
                Ok(ExprAst::Pow(Box::new(base), e))
            }
            Some(Tok::Minus) => Err(parse_err(pos, "negative exponent")),
            _ => Err(parse_err(pos, "exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<ExprAst> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(d)) => Ok(ExprAst::Int(d)),
            Some(Tok::Ident(name)) => Ok(ExprAst::Var { name, position: pos }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(parse_err(pos, "unclosed parenthesis"));
                }
                Ok(inner)
            }
            Some(t) => Err(parse_err(pos, format!("unexpected {t:?}"))),
            None => Err(parse_err(pos, "unexpected end of input")),
        }
    }
}

fn parse_tokens(toks: Vec<(Tok, usize)>, end: usize) -> Result<ExprAst> {
    let mut p = Parser { toks, at: 0, end };
    let ast = p.expr()?;
    if p.at < p.toks.len() {
        return Err(parse_err(p.pos(), "unexpected trailing input"));
    }
    Ok(ast)
}

/// Parses one expression without resolving variables.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let toks = lex(text)?;
    if toks.iter().any(|t| t.0 == Tok::Comma) {
        let pos = toks.iter().find(|t| t.0 == Tok::Comma).map_or(0, |t| t.1);
        return Err(parse_err(pos, "unexpected ','"));
    }
    parse_tokens(toks, text.len())
}

impl ExprAst {
    pub fn eval(&self, ring: &RingRef) -> Result<Polynomial> {
        Ok(match self {
            ExprAst::Int(d) => {
                let p = ring.characteristic() as u64;
                let c = d.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Polynomial::constant(ring, c as i64)
            }
            ExprAst::Var { name, position } => {
                let i = ring
                    .var_index(name)
                    .ok_or_else(|| parse_err(*position, format!("unknown variable '{name}'")))?;
                Polynomial::var(ring, i)
            }
            ExprAst::Neg(a) => -&a.eval(ring)?,
            ExprAst::Add(a, b) => &a.eval(ring)? + &b.eval(ring)?,
            ExprAst::Sub(a, b) => &a.eval(ring)? - &b.eval(ring)?,
            ExprAst::Mul(a, b) => &a.eval(ring)? * &b.eval(ring)?,
            ExprAst::Pow(a, e) => a.eval(ring)?.pow(*e),
        })
    }
}

/// Parses `text` in `ring`; coefficients are reduced mod p.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    parse_expr(text)?.eval(ring)
}

/// Comma-separated polynomials, e.g. `"X^2 - Y, X*Y - 1"`. Blank input gives
/// an empty list.
pub fn parse_polynomial_list(text: &str, ring: &RingRef) -> Result<Vec<Polynomial>> {
    let toks = lex(text)?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = Vec::new();
    for (tok, pos) in toks {
        match tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            Tok::Comma if depth == 0 => {
                if current.is_empty() {
                    return Err(parse_err(pos, "empty list entry"));
                }
                out.push(parse_tokens(std::mem::take(&mut current), pos)?.eval(ring)?);
                continue;
            }
            _ => {}
        }
        current.push((tok, pos));
    }
    if !current.is_empty() {
        out.push(parse_tokens(current, text.len())?.eval(ring)?);
    } else if !out.is_empty() {
        return Err(parse_err(text.len(), "trailing ','"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Ring};

    fn ring(p: u32, names: &[&str]) -> RingRef {
        Ring::new(
            PrimeField::new(p).unwrap(),
            names.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[test]
    fn quartic_relation() {
        let r = ring(5, &["X1", "X2", "X3", "X4"]);
        let f = parse_polynomial("X1^4 + X2^4 + X3^4 + X4^4", &r).unwrap();
        let expected = (0..4).fold(Polynomial::zero(&r), |acc, i| &acc + &Polynomial::var(&r, i).pow(4));
        assert_eq!(f, expected);
    }

    #[test]
    fn coefficient_reduction() {
        let r = ring(7, &["X"]);
        assert!(parse_polynomial("7*X", &r).unwrap().is_zero());
        assert_eq!(parse_polynomial("123456789012345678901234567890", &r).unwrap(), {
            let c = "123456789012345678901234567890"
                .bytes()
                .fold(0u64, |a, b| (a * 10 + (b - b'0') as u64) % 7);
            Polynomial::constant(&r, c as i64)
        });
    }

    #[test]
    fn precedence() {
        let r = ring(101, &["X", "Y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert_eq!(parse_polynomial("-X^2", &r).unwrap(), -&x.pow(2));
        assert_eq!(parse_polynomial("2*X + Y*3", &r).unwrap(), &x.scale(2) + &y.scale(3));
        assert_eq!(parse_polynomial("(X - Y)^2", &r).unwrap(), (&x - &y).pow(2));
        assert_eq!(parse_polynomial("X - -Y", &r).unwrap(), &x + &y);
    }

    #[test]
    fn errors() {
        let r = ring(5, &["X", "Y"]);
        assert!(matches!(
            parse_polynomial("X^-1", &r),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("2X", &r),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("Z + X", &r),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_polynomial("X + $", &r),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(parse_polynomial("(X + Y", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("X^2^3", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn lists() {
        let r = ring(5, &["X", "Y"]);
        assert_eq!(
            parse_polynomial_list("X^2 - Y, (X + Y)*(X - Y), 3", &r).unwrap().len(),
            3
        );
        assert!(parse_polynomial_list("  ", &r).unwrap().is_empty());
        assert!(parse_polynomial_list("X,", &r).is_err());
        assert!(parse_polynomial_list("X,,Y", &r).is_err());
    }
}
