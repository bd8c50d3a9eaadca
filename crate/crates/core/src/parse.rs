//! Expression parser shared by every polynomial type.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    = ['+' | '-'] term (('+' | '-') term)*
//! term    = factor ('*' factor)*
//! factor  = primary ('^' (nat | primary))*
//! primary = int ['/' nat] | ident | 'd/d' ident | '(' expr ')' | '-' factor
//! ```
//!
//! The canonical printed form is a subset of this grammar. `^` followed by a
//! non-number is read as a product, which is how `d/dx ^ d/dy` parses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cpoly::CPoly;
use crate::error::{Error, Result};
use crate::lie::LieAlgebraSpec;
use crate::scalar::{HScalar, Rational};

/// Target ring for [`parse_expr`].
pub trait ExprBuilder {
    type Value: Clone;

    fn constant(&self, q: Rational) -> Self::Value;
    /// Resolves an identifier (generator, `h`, or bound parameter).
    fn symbol(&self, name: &str, pos: usize) -> Result<Self::Value>;
    /// Resolves `d/d<name>`; only multivector builders accept these.
    fn partial(&self, name: &str, pos: usize) -> Result<Self::Value> {
        Err(Error::UnknownVariable {
            name: format!("d/d{name}"),
            pos,
        })
    }
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Partial(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str, partials: bool) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '/' => out.push((Tok::Slash, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                if partials && s == "d" && chars.get(i) == Some(&'/') && chars.get(i + 1) == Some(&'d') {
                    let mut k = i + 2;
                    while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                        k += 1;
                    }
                    if k > i + 2 {
                        out.push((Tok::Partial(chars[i + 2..k].iter().collect()), start));
                        i = k;
                        continue;
                    }
                }
                out.push((Tok::Ident(s), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a, B: ExprBuilder> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    builder: &'a B,
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<B::Value> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                let t = self.term()?;
                self.builder.neg(t)
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.builder.add(acc, t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.builder.add(acc, self.builder.neg(t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B::Value> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = self.builder.mul(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<B::Value> {
        let mut acc = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            if let Tok::Int(n) = self.peek().clone() {
                let pos = self.pos();
                self.bump();
                let n: u32 = n.try_into().map_err(|_| Error::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                let mut p = self.builder.constant(Rational::one());
                for _ in 0..n {
                    p = self.builder.mul(p, acc.clone());
                }
                acc = p;
            } else {
                let rhs = self.primary()?;
                acc = self.builder.mul(acc, rhs);
            }
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<B::Value> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(self.builder.constant(Rational::new(n, d))),
                        Tok::Int(_) => Err(Error::Syntax {
                            pos: pos + 1,
                            msg: "zero denominator".into(),
                        }),
                        _ => Err(Error::Syntax {
                            pos,
                            msg: "expected a natural-number denominator".into(),
                        }),
                    }
                } else {
                    Ok(self.builder.constant(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => self.builder.symbol(&name, pos),
            Tok::Partial(name) => self.builder.partial(&name, pos),
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::Minus => {
                let f = self.factor()?;
                Ok(self.builder.neg(f))
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parses `text` into the builder's ring.
pub fn parse_expr<B: ExprBuilder>(text: &str, builder: &B, partials: bool) -> Result<B::Value> {
    let toks = tokenize(text, partials)?;
    let mut p = Parser {
        toks,
        at: 0,
        builder,
    };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Builds [`CPoly`] values over a fixed set of variable names.
pub struct CPolyBuilder<'a> {
    pub names: &'a [String],
    /// Extra symbols bound to rational values, e.g. `l` in `l*(l+h)`.
    pub bindings: &'a BTreeMap<String, Rational>,
}

impl ExprBuilder for CPolyBuilder<'_> {
    type Value = CPoly;

    fn constant(&self, q: Rational) -> CPoly {
        CPoly::rational(self.names.len(), q)
    }

    fn symbol(&self, name: &str, pos: usize) -> Result<CPoly> {
        let n = self.names.len();
        if name == "h" {
            return Ok(CPoly::h(n));
        }
        if let Some(i) = self.names.iter().position(|s| s == name) {
            return Ok(CPoly::var(n, i));
        }
        if let Some(q) = self.bindings.get(name) {
            return Ok(CPoly::rational(n, q.clone()));
        }
        Err(Error::UnknownVariable {
            name: name.to_string(),
            pos,
        })
    }

    fn add(&self, a: CPoly, b: CPoly) -> CPoly {
        &a + &b
    }

    fn neg(&self, a: CPoly) -> CPoly {
        -&a
    }

    fn mul(&self, a: CPoly, b: CPoly) -> CPoly {
        &a * &b
    }
}

pub fn parse_cpoly(text: &str, alg: &LieAlgebraSpec) -> Result<CPoly> {
    parse_cpoly_with(text, alg, &BTreeMap::new())
}

pub fn parse_cpoly_with(text: &str, alg: &LieAlgebraSpec, bindings: &BTreeMap<String, Rational>) -> Result<CPoly> {
    parse_expr(
        text,
        &CPolyBuilder {
            names: alg.names(),
            bindings,
        },
        false,
    )
}

/// Parses a polynomial in `h` alone (plus bound parameters), such as `l*(l+h)`.
pub fn parse_hscalar(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<HScalar> {
    let p = parse_expr(text, &CPolyBuilder { names: &[], bindings }, false)?;
    Ok(p.as_scalar().expect("no variables in an h-only context"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn su2() -> LieAlgebraSpec {
        LieAlgebraSpec::su2()
    }

    #[test]
    fn two_term_literal() {
        let f = parse_cpoly("x*y + 1/2*h*z", &su2()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_canonical(su2().names()), "x*y + 1/2*h*z");
    }

    #[test]
    fn zero_parses_to_empty() {
        assert!(parse_cpoly("0", &su2()).unwrap().is_zero());
        assert!(parse_cpoly("x - x", &su2()).unwrap().is_zero());
    }

    #[test]
    fn invariant_polynomial() {
        let p = parse_cpoly("x^2+y^2+z^2", &su2()).unwrap();
        assert_eq!(p, crate::cpoly::sum_of_squares(3));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_cpoly("x + w", &su2()) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_cpoly("x + * y", &su2()), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_cpoly("(x + y", &su2()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_cpoly("x $ y", &su2()), Err(Error::Syntax { pos: 2, .. })));
        assert!(parse_cpoly("", &su2()).is_err());
        assert!(parse_cpoly("1/0", &su2()).is_err());
    }

    #[test]
    fn bound_parameters() {
        let mut b = BTreeMap::new();
        b.insert("l".to_string(), int(1));
        let c = parse_hscalar("l*(l+h)", &b).unwrap();
        assert_eq!(c, HScalar::from_coeffs(vec![int(1), int(1)]));
        b.insert("l".to_string(), rat(3, 2));
        let c = parse_hscalar("l*(l+h)", &b).unwrap();
        assert_eq!(c.eval(&int(1)), rat(15, 4));
    }

    fn arb_poly() -> impl Strategy<Value = CPoly> {
        let term = (-20i64..20, 1i64..6, 0u32..3, 0u32..3, 0u32..3, 0usize..3);
        prop::collection::vec(term, 0..8).prop_map(|ts| {
            let mut f = CPoly::zero(3);
            for (n, d, a, b, c, k) in ts {
                f.add_term(
                    crate::cpoly::Monomial(vec![a, b, c]),
                    &HScalar::monomial(rat(n, d), k),
                );
            }
            f
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(f in arb_poly()) {
            let alg = su2();
            let s = f.to_canonical(alg.names());
            let back = parse_cpoly(&s, &alg).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_canonical(alg.names()), s);
        }
    }
}
