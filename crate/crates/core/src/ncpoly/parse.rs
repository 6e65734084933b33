//! Expression parser for algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*' | '·' | '/' | <juxtaposition>) power)*
//! power  := atom ('^' ['-'] INT)?
//! atom   := NUMBER | IDENT ['*'] | '(' expr ')' | '[[' INT ']]' | '[' INT ']' | '[K;' INT ']'
//! ```
//!
//! A `*` glued to the end of an identifier is the adjoint (`a*`, `E*`); a
//! free-standing `*` or `·` is multiplication. Identifiers resolve to `q`, `r`,
//! generator names and the algebra's named elements (`N`, `C_q`).
//! `[[k]]` is the q-integer `(q^k - 1)/(q - 1)`, `[n]` the symmetric q-number and
//! `[K;l]` the element `(q^l K - q^-l K^-1)/(q - q^-1)` of U_q(su(2)).

use num_rational::BigRational;

use crate::algebras::{AlgebraKind, BPoly, GradedStarAlgebra};
use crate::numeric::decimal_to_rational;
use crate::scalar::Scalar;

use super::NcPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    StarSuffix,
    Plus,
    Minus,
    Times,
    Slash,
    Caret,
    LParen,
    RParen,
    LDouble,
    RDouble,
    LBracket,
    RBracket,
    Semicolon,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '·' => {
                out.push((Tok::Times, pos));
                i += 1;
            }
            '*' => {
                let glued = matches!(out.last(), Some((Tok::Ident(_), p)) if {
                    // the identifier must end right before this star
                    let prev_end = chars[..i].last().map(|(p2, ch)| p2 + ch.len_utf8());
                    prev_end == Some(pos) && *p < pos
                });
                out.push((if glued { Tok::StarSuffix } else { Tok::Times }, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            ';' => {
                out.push((Tok::Semicolon, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            '[' => {
                if chars.get(i + 1).map(|x| x.1) == Some('[') {
                    out.push((Tok::LDouble, pos));
                    i += 2;
                } else {
                    out.push((Tok::LBracket, pos));
                    i += 1;
                }
            }
            ']' => {
                if chars.get(i + 1).map(|x| x.1) == Some(']') {
                    out.push((Tok::RDouble, pos));
                    i += 2;
                } else {
                    out.push((Tok::RBracket, pos));
                    i += 1;
                }
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                let v = decimal_to_rational(&s).ok_or_else(|| ParseError::Syntax {
                    position: pos,
                    message: format!("bad number `{s}`"),
                })?;
                out.push((Tok::Num(v), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                out.push((Tok::Ident(s), pos));
            }
            other => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    alg: &'a GradedStarAlgebra,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::LDouble | Tok::LBracket)
        )
    }

    fn term(&mut self) -> Result<NcPolynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Times) => {
                    self.pos += 1;
                    acc = acc.multiply(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.power()?;
                    let s = as_scalar(&d).ok_or(ParseError::Syntax {
                        position: at,
                        message: "divisor must be a scalar".into(),
                    })?;
                    let inv = Scalar::one().checked_div(&s).ok_or(ParseError::Syntax {
                        position: at,
                        message: "divisor must be a nonzero scalar free of r".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_atom() => {
                    acc = acc.multiply(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int_literal(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(v)) if v.is_integer() => {
                let n: i64 = v
                    .to_integer()
                    .try_into()
                    .map_err(|_| ParseError::Syntax {
                        position: self.here(),
                        message: "integer too large".into(),
                    })?;
                Ok(if neg { -n } else { n })
            }
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn power(&mut self) -> Result<NcPolynomial, ParseError> {
        let (base, inverse) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let e = self.int_literal()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        if let Some(inv) = inverse {
            return Ok(inv.pow(e.unsigned_abs() as u32));
        }
        if let Some(s) = as_scalar(&base) {
            let inv = Scalar::one().checked_div(&s).ok_or(ParseError::Syntax {
                position: at,
                message: "negative power of a zero or r-dependent scalar".into(),
            })?;
            return Ok(NcPolynomial::constant(inv.pow(e.unsigned_abs() as u32)));
        }
        Err(ParseError::Syntax {
            position: at,
            message: "negative powers need an invertible generator".into(),
        })
    }

    /// Returns the atom and, for invertible generators, its inverse.
    fn atom(&mut self) -> Result<(NcPolynomial, Option<NcPolynomial>), ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok((NcPolynomial::constant(Scalar::from_ratio(v)), None)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((e, None))
            }
            Some(Tok::LDouble) => {
                let k = self.int_literal()?;
                self.expect(Tok::RDouble, "`]]`")?;
                Ok((NcPolynomial::constant(Scalar::q_integer(k)), None))
            }
            Some(Tok::LBracket) if matches!(self.peek(), Some(Tok::Ident(k)) if k == "K") => {
                // [K;l] = (q^l K - q^-l K^-1)/(q - q^-1)
                self.pos += 1;
                if self.alg.kind() != AlgebraKind::UqSu2 {
                    return self.err("`[K;l]` needs the generator K");
                }
                self.expect(Tok::Semicolon, "`;`")?;
                let l = self.int_literal()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok((BPoly::k_bracket(l).embed(self.alg), None))
            }
            Some(Tok::LBracket) => {
                let k = self.int_literal()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok((NcPolynomial::constant(Scalar::q_number(k)), None))
            }
            Some(Tok::Ident(name)) => {
                let starred = if self.peek() == Some(&Tok::StarSuffix) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                self.resolve(&name, starred, at)
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected an operand")
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn resolve(
        &self,
        name: &str,
        starred: bool,
        at: usize,
    ) -> Result<(NcPolynomial, Option<NcPolynomial>), ParseError> {
        let alg = self.alg;
        if starred {
            if let Some(g) = alg.generator_index(&format!("{name}*")) {
                return Ok((NcPolynomial::generator(g), None));
            }
        }
        let (value, inverse) = match name {
            "q" => (NcPolynomial::constant(Scalar::q()), None),
            "r" if alg.has_r() => (NcPolynomial::constant(Scalar::r()), None),
            _ => {
                if let Some(g) = alg.generator_index(name) {
                    let inv = alg.inverse_of(g).map(NcPolynomial::generator);
                    (NcPolynomial::generator(g), inv)
                } else if let Some(p) = alg.named_element(name) {
                    (p.clone(), None)
                } else {
                    return Err(ParseError::UnknownGenerator {
                        name: name.to_string(),
                        position: at,
                    });
                }
            }
        };
        if starred {
            Ok((value.star(alg), None))
        } else {
            Ok((value, inverse))
        }
    }
}

fn as_scalar(p: &NcPolynomial) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.len() == 1 {
        let (w, c) = p.terms().next()?;
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

/// Parse `text` into an element of `alg` (canonical, not normal-ordered).
pub fn parse(text: &str, alg: &GradedStarAlgebra) -> Result<NcPolynomial, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        alg,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_suffix_and_juxtaposition() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let p = parse("a* a", &alg).unwrap();
        assert_eq!(p, alg.gen_poly("a*").multiply(&alg.gen_poly("a")));
        assert_eq!(parse("a*a", &alg).unwrap(), p);
        assert_eq!(parse("N", &alg).unwrap(), p);
    }

    #[test]
    fn inverse_power_on_invertible_generator() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        let p = parse("K K^-1", &alg).unwrap();
        let (w, _) = p.terms().next().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(alg.word_degree(w), 0);
    }

    #[test]
    fn commutator_has_two_terms() {
        let alg = GradedStarAlgebra::uq_su2_symbolic();
        let p = parse("E F - F E", &alg).unwrap();
        assert_eq!(p.len(), 2);
        let ef = alg.gen_poly("E").multiply(&alg.gen_poly("F"));
        assert_eq!(p.coeff(ef.terms().next().unwrap().0), Scalar::one());
    }

    #[test]
    fn scalars_and_brackets() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        let p = parse("(N-1)*(N-1-q)", &alg).unwrap();
        // N·N, N and the unit
        assert_eq!(p.len(), 3);
        let c = parse("[[3]] - [2] + 1/2 + q^-1", &alg).unwrap();
        let expected = Scalar::q_integer(3) - Scalar::q_number(2) + Scalar::frac(1, 2) + Scalar::q_pow(-1);
        assert_eq!(c, NcPolynomial::constant(expected));
    }

    #[test]
    fn errors_carry_positions() {
        let alg = GradedStarAlgebra::q_oscillator_symbolic();
        assert_eq!(
            parse("a + x", &alg),
            Err(ParseError::UnknownGenerator { name: "x".into(), position: 4 })
        );
        assert!(matches!(parse("a + ", &alg), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse("(a", &alg), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("a / a", &alg), Err(ParseError::Syntax { .. })));
        // r is not a parameter of the oscillator
        assert!(matches!(parse("r a", &alg), Err(ParseError::UnknownGenerator { .. })));
    }
}
