//! The wire grammar for scalars, algebra elements, polynomials and module
//! vectors, with canonical formatters. `parse(format(x)) = x` for every
//! canonical value.
//!
//! ```text
//! scalar  := ["-"] ( surd | rational ["*" "sqrt2"] [("+"|"-") surd] )
//! surd    := [rational "*"] "sqrt2"
//! element := ["-"] term (("+"|"-") term)*
//! term    := [coeff "*"] atom
//! coeff   := "sqrt2" | rational ["*" "sqrt2"]
//! atom    := "L(" int "," uint ")" | "G(" halfint "," uint ")"
//! halfint := int | int "/2"          (odd numerator)
//! poly    := ["-"] pterm (("+"|"-") pterm)*
//! pterm   := upow | pcoeff ["*" upow]
//! pcoeff  := coeff | "(" scalar ")"
//! upow    := "u" ["^" uint]
//! vector  := "even" ":" poly ";" "odd" ":" poly
//! ```
//!
//! Half-integral indices are written `k/2` with odd `k`; whitespace between
//! tokens is ignored.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraElement, BasisKey, Parity, Sector};
use crate::error::ParseError;
use crate::poly::Poly;
use crate::scalar::{fmt_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Colon => "':'".into(),
        }
    }
}

struct SpTok {
    tok: Tok,
    offset: usize,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<SpTok>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<SpTok>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let offset = i;
        let tok = match c {
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b':' => {
                i += 1;
                Tok::Colon
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start..i];
                Tok::Int(digits.parse().expect("digit run parses as BigInt"))
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            other => {
                return Err(ParseError::Syntax {
                    offset,
                    message: format!("unexpected character '{}'", other as char),
                })
            }
        };
        toks.push(SpTok { tok, offset });
    }
    Ok(toks)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    /// Offset for error reporting, clamped inside the source text.
    fn here(&self) -> usize {
        let raw = self
            .toks
            .get(self.pos)
            .map(|t| t.offset)
            .unwrap_or(self.src.len());
        raw.min(self.src.len().saturating_sub(1))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.syntax(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().map(|t| t.describe()).unwrap_or("end of input".into())
            )))
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.here(),
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, ParseError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n.clone()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.syntax("expected an unsigned integer"))
            }
        }
    }

    /// Unsigned rational `n` or `n/d`; a zero denominator is rejected at
    /// the denominator's offset.
    fn parse_unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.parse_uint()?;
        if self.eat(&Tok::Slash) {
            let denom_offset = self.here();
            let denom = self.parse_uint()?;
            if denom.is_zero() {
                return Err(ParseError::Syntax {
                    offset: denom_offset,
                    message: "denominator must be nonzero".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from(numer))
        }
    }

    fn is_sqrt2(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "sqrt2")
    }

    /// `["-"] ( surd | rational ["*" "sqrt2"] [("+"|"-") surd] )`; a leading
    /// sign binds to the first component only.
    fn parse_scalar_full(&mut self) -> Result<Scalar, ParseError> {
        let negative = self.eat(&Tok::Minus);
        if self.is_sqrt2() {
            self.bump();
            let s = Scalar::sqrt2();
            return Ok(if negative { -s } else { s });
        }
        let first = self.parse_unsigned_rational()?;
        let first = if negative { -first } else { first };
        // rational*sqrt2 form: a pure surd, no rational part
        if self.peek() == Some(&Tok::Star) && matches!(self.peek2(), Some(Tok::Ident(s)) if s == "sqrt2")
        {
            self.bump();
            self.bump();
            return Ok(Scalar::new(Rational::zero(), first));
        }
        // optional surd tail signed by the joining operator
        let surd_negative = if self.peek() == Some(&Tok::Plus) {
            Some(false)
        } else if self.peek() == Some(&Tok::Minus) {
            Some(true)
        } else {
            None
        };
        if let Some(neg) = surd_negative {
            self.bump();
            let mag = if self.is_sqrt2() {
                self.bump();
                Rational::from(BigInt::from(1))
            } else {
                let r = self.parse_unsigned_rational()?;
                self.expect(Tok::Star)?;
                if !self.is_sqrt2() {
                    return Err(self.syntax("expected 'sqrt2' after the coefficient"));
                }
                self.bump();
                r
            };
            let surd = if neg { -mag } else { mag };
            return Ok(Scalar::new(first, surd));
        }
        Ok(Scalar::from_rational(first))
    }

    /// Signed integer (for L-indices and exponents in atoms).
    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.eat(&Tok::Minus);
        let n = self.parse_uint()?;
        Ok(if negative { -n } else { n })
    }

    fn int_to_i64(&self, n: &BigInt) -> Result<i64, ParseError> {
        i64::try_from(n.clone()).map_err(|_| self.syntax("index out of range"))
    }

    /// `int | int/2` with an odd numerator in the latter case; returns the
    /// doubled index.
    fn parse_halfint_twice(&mut self) -> Result<i64, ParseError> {
        let negative = self.eat(&Tok::Minus);
        let numer_offset = self.here();
        let numer = self.parse_uint()?;
        if self.eat(&Tok::Slash) {
            let denom_offset = self.here();
            let denom = self.parse_uint()?;
            if denom != BigInt::from(2) {
                return Err(ParseError::Syntax {
                    offset: denom_offset,
                    message: "half-integers must have denominator 2".into(),
                });
            }
            if (&numer % BigInt::from(2)).is_zero() {
                return Err(ParseError::Syntax {
                    offset: numer_offset,
                    message: "half-integers are written k/2 with odd k".into(),
                });
            }
            let k = self.int_to_i64(&numer)?;
            Ok(if negative { -k } else { k })
        } else {
            let m = self.int_to_i64(&numer)?;
            let m = if negative { -m } else { m };
            m.checked_mul(2).ok_or_else(|| self.syntax("index out of range"))
        }
    }

    /// `L(int, uint)` or `G(halfint, uint)`, validated against the sector.
    fn parse_atom(&mut self, sector: Sector) -> Result<BasisKey, ParseError> {
        let atom_offset = self.here();
        let parity = match self.peek() {
            Some(Tok::Ident(s)) if s == "L" => Parity::Even,
            Some(Tok::Ident(s)) if s == "G" => Parity::Odd,
            _ => return Err(self.syntax("expected a generator 'L(...)' or 'G(...)'")),
        };
        self.bump();
        self.expect(Tok::LParen)?;
        let twice = match parity {
            Parity::Even => {
                let m = self.parse_int()?;
                self.int_to_i64(&m)?
                    .checked_mul(2)
                    .ok_or_else(|| self.syntax("index out of range"))?
            }
            Parity::Odd => self.parse_halfint_twice()?,
        };
        self.expect(Tok::Comma)?;
        let grade_big = self.parse_uint()?;
        let grade = u32::try_from(grade_big).map_err(|_| self.syntax("grade out of range"))?;
        self.expect(Tok::RParen)?;
        let key = BasisKey::new(parity, twice, grade).map_err(|e| ParseError::Syntax {
            offset: atom_offset,
            message: e.to_string(),
        })?;
        if !key.valid_in(sector) {
            return Err(ParseError::Semantic {
                offset: atom_offset,
                message: format!("{key} is not a valid generator of the {sector} sector"),
            });
        }
        Ok(key)
    }

    /// `sqrt2 | rational [* sqrt2]` in term-coefficient position; the `*`
    /// binding the coefficient to the atom is consumed here.
    fn parse_term_coeff(&mut self) -> Result<Scalar, ParseError> {
        let coeff = if self.is_sqrt2() {
            self.bump();
            Scalar::sqrt2()
        } else {
            let r = self.parse_unsigned_rational()?;
            if self.peek() == Some(&Tok::Star)
                && matches!(self.peek2(), Some(Tok::Ident(s)) if s == "sqrt2")
            {
                self.bump();
                self.bump();
                Scalar::new(Rational::zero(), r)
            } else {
                Scalar::from_rational(r)
            }
        };
        self.expect(Tok::Star)?;
        Ok(coeff)
    }

    fn atom_ahead(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "L" || s == "G")
    }

    fn parse_element_full(&mut self, sector: Sector) -> Result<AlgebraElement, ParseError> {
        let mut out = AlgebraElement::zero(sector);
        // the zero element renders as a bare "0"
        if self.toks.len() == self.pos + 1 {
            if let Some(Tok::Int(n)) = self.peek() {
                if n.is_zero() {
                    self.bump();
                    return Ok(out);
                }
            }
        }
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let coeff = if self.atom_ahead() {
                Scalar::one()
            } else {
                self.parse_term_coeff()?
            };
            let atom_offset = self.here();
            let key = self.parse_atom(sector)?;
            let signed = if negative { -coeff } else { coeff };
            out.add_term(key, signed).map_err(|e| ParseError::Semantic {
                offset: atom_offset.min(self.src.len().saturating_sub(1)),
                message: e.to_string(),
            })?;
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    /// `u [^ uint]`; returns the exponent.
    fn parse_upow(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "u" => {
                self.bump();
            }
            _ => return Err(self.syntax("expected the variable 'u'")),
        }
        if self.eat(&Tok::Caret) {
            let n = self.parse_uint()?;
            usize::try_from(n).map_err(|_| self.syntax("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn upow_ahead(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "u")
    }

    fn parse_poly_full(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let term = if self.upow_ahead() {
                Poly::monomial(Scalar::one(), self.parse_upow()?)
            } else {
                // coefficient: parenthesized scalar, sqrt2-form or rational
                let coeff = if self.eat(&Tok::LParen) {
                    let s = self.parse_scalar_full()?;
                    self.expect(Tok::RParen)?;
                    s
                } else if self.is_sqrt2() {
                    self.bump();
                    Scalar::sqrt2()
                } else {
                    let r = self.parse_unsigned_rational()?;
                    if self.peek() == Some(&Tok::Star)
                        && matches!(self.peek2(), Some(Tok::Ident(s)) if s == "sqrt2")
                    {
                        self.bump();
                        self.bump();
                        Scalar::new(Rational::zero(), r)
                    } else {
                        Scalar::from_rational(r)
                    }
                };
                if self.eat(&Tok::Star) {
                    Poly::monomial(coeff, self.parse_upow()?)
                } else {
                    Poly::constant(coeff)
                }
            };
            let signed = if negative { -term } else { term };
            acc = &acc + &signed;
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn expect_ident(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.bump();
                Ok(())
            }
            _ => Err(self.syntax(format!("expected '{word}'"))),
        }
    }

    fn parse_vector_full(&mut self) -> Result<(Poly, Poly), ParseError> {
        self.expect_ident("even")?;
        self.expect(Tok::Colon)?;
        let even = self.parse_poly_full()?;
        self.expect(Tok::Semi)?;
        self.expect_ident("odd")?;
        self.expect(Tok::Colon)?;
        let odd = self.parse_poly_full()?;
        Ok((even, odd))
    }
}

/// Parses a scalar literal such as `3/2`, `1 + 1*sqrt2` or `-1/2*sqrt2`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(p.syntax("empty input"));
    }
    let s = p.parse_scalar_full()?;
    p.expect_end()?;
    Ok(s)
}

/// Parses an algebra element such as `L(2,1) + 3/2*G(1/2,0)`, validating
/// every generator against the sector.
pub fn parse_element(text: &str, sector: Sector) -> Result<AlgebraElement, ParseError> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(p.syntax("empty input"));
    }
    let el = p.parse_element_full(sector)?;
    p.expect_end()?;
    Ok(el)
}

/// Parses a polynomial in `u` such as `u^2 - 4*u + 4` or `(1 + sqrt2)*u`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(p.syntax("empty input"));
    }
    let out = p.parse_poly_full()?;
    p.expect_end()?;
    Ok(out)
}

/// Parses a graded vector `even: <poly>; odd: <poly>`.
pub fn parse_vector(text: &str) -> Result<(Poly, Poly), ParseError> {
    let mut p = Parser::new(text)?;
    if p.at_end() {
        return Err(p.syntax("empty input"));
    }
    let out = p.parse_vector_full()?;
    p.expect_end()?;
    Ok(out)
}

/// One rendered additive piece: magnitude text plus its sign.
struct Piece {
    negative: bool,
    body: String,
}

fn join_pieces(pieces: Vec<Piece>) -> String {
    let mut out = String::new();
    for (i, piece) in pieces.iter().enumerate() {
        if i == 0 {
            if piece.negative {
                out.push('-');
            }
        } else if piece.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&piece.body);
    }
    out
}

/// Pieces of a scalar coefficient attached to a multiplicand (`suffix`),
/// splitting mixed coefficients into a rational and a sqrt2 piece so the
/// element grammar never needs parentheses.
fn coeff_pieces(c: &Scalar, suffix: &str, pieces: &mut Vec<Piece>) {
    let one = Rational::from(BigInt::from(1));
    if !c.rat_part().is_zero() {
        let mag = c.rat_part().abs();
        let body = if mag == one && !suffix.is_empty() {
            suffix.to_string()
        } else if suffix.is_empty() {
            fmt_rational(&mag)
        } else {
            format!("{}*{}", fmt_rational(&mag), suffix)
        };
        pieces.push(Piece {
            negative: c.rat_part().is_negative(),
            body,
        });
    }
    if !c.surd_part().is_zero() {
        let mag = c.surd_part().abs();
        let body = if mag == one {
            if suffix.is_empty() {
                "sqrt2".to_string()
            } else {
                format!("sqrt2*{suffix}")
            }
        } else if suffix.is_empty() {
            format!("{}*sqrt2", fmt_rational(&mag))
        } else {
            format!("{}*sqrt2*{}", fmt_rational(&mag), suffix)
        };
        pieces.push(Piece {
            negative: c.surd_part().is_negative(),
            body,
        });
    }
}

/// Canonical rendering: even keys before odd, ascending doubled index, then
/// grade; unit coefficients elided; mixed coefficients split into a
/// rational and a sqrt2 term.
pub fn format_element(x: &AlgebraElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut pieces = Vec::new();
    for (key, coeff) in x.terms() {
        coeff_pieces(coeff, &key.to_string(), &mut pieces);
    }
    join_pieces(pieces)
}

/// Canonical polynomial rendering, descending degree. Mixed coefficients on
/// powers of `u` are parenthesized; mixed constant terms split in two.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut pieces = Vec::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let upart = match k {
            0 => String::new(),
            1 => "u".to_string(),
            _ => format!("u^{k}"),
        };
        if k == 0 || c.rat_part().is_zero() || c.surd_part().is_zero() {
            coeff_pieces(&c, &upart, &mut pieces);
        } else {
            pieces.push(Piece {
                negative: false,
                body: format!("({c})*{upart}"),
            });
        }
    }
    join_pieces(pieces)
}

/// Graded-vector rendering `even: <poly>; odd: <poly>`.
pub fn format_vector(even: &Poly, odd: &Poly) -> String {
    format!("even: {}; odd: {}", format_poly(even), format_poly(odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn scalar_examples() {
        assert_eq!(parse_scalar("3/2").unwrap(), Scalar::from_ratio(3, 2));
        assert_eq!(
            parse_scalar("1 + 1*sqrt2").unwrap(),
            Scalar::new(rat(1, 1), rat(1, 1))
        );
        assert_eq!(parse_scalar("1+sqrt2").unwrap(), Scalar::new(rat(1, 1), rat(1, 1)));
        assert_eq!(parse_scalar("-sqrt2").unwrap(), -Scalar::sqrt2());
        assert_eq!(
            parse_scalar("3/2 - 1/2*sqrt2").unwrap(),
            Scalar::new(rat(3, 2), rat(-1, 2))
        );
        let err = parse_scalar("1/0").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        assert!(err.offset() < 3);
    }

    #[test]
    fn element_examples() {
        let el = parse_element("L(2,1) + 3/2*G(1/2,0)", Sector::NSB).unwrap();
        assert_eq!(el.len(), 2);
        assert_eq!(el.coeff(&BasisKey::l(2, 1)), Scalar::one());
        assert_eq!(el.coeff(&BasisKey::g(1, 0)), Scalar::from_ratio(3, 2));

        let err = parse_element("G(1/2,0)", Sector::RB).unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }));
        assert_eq!(err.offset(), 0);

        let err = parse_element("G(1,0)", Sector::NSB).unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }));

        // canonical form: even keys first, unit coefficient elided
        let el = parse_element("3/2*G(1/2,0) + L(2,1)", Sector::NSB).unwrap();
        assert_eq!(format_element(&el), "L(2,1) + 3/2*G(1/2,0)");

        // cancelling terms yield the zero element
        let el = parse_element("L(0,0) - L(0,0)", Sector::RB).unwrap();
        assert!(el.is_zero());
        assert_eq!(format_element(&el), "0");
    }

    #[test]
    fn format_examples() {
        let half_l = AlgebraElement::from_term(
            Sector::RB,
            BasisKey::l(2, 0),
            Scalar::from_ratio(1, 2),
        )
        .unwrap();
        assert_eq!(format_element(&half_l), "1/2*L(2,0)");

        // the doubling embedding of G(1/2,0) renders with a rationalized surd
        let g = AlgebraElement::basis(Sector::NSB, BasisKey::g(1, 0)).unwrap();
        let image = crate::algebra::tau_embed(&g).unwrap();
        assert_eq!(format_element(&image), "1/2*sqrt2*G(1,0)");

        // mixed coefficient splits into two grammar terms
        let mixed = AlgebraElement::from_term(
            Sector::RB,
            BasisKey::l(0, 0),
            Scalar::new(rat(1, 1), rat(1, 1)),
        )
        .unwrap();
        assert_eq!(format_element(&mixed), "L(0,0) + sqrt2*L(0,0)");
        assert_eq!(parse_element("L(0,0) + sqrt2*L(0,0)", Sector::RB).unwrap(), mixed);

        let negated = mixed.scale(&Scalar::from_int(-1));
        assert_eq!(format_element(&negated), "-L(0,0) - sqrt2*L(0,0)");
    }

    #[test]
    fn poly_and_vector_round_trip_examples() {
        let p = parse_poly("u^2 - 4*u + 4").unwrap();
        assert_eq!(p.coeff(2), Scalar::one());
        assert_eq!(p.coeff(1), Scalar::from_int(-4));
        assert_eq!(format_poly(&p), "u^2 - 4*u + 4");

        let p = parse_poly("(1 + sqrt2)*u^2 - 1/2*sqrt2*u + 3").unwrap();
        assert_eq!(format_poly(&p), "(1 + sqrt2)*u^2 - 1/2*sqrt2*u + 3");
        assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);

        assert_eq!(format_poly(&Poly::zero()), "0");
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());

        let (even, odd) = parse_vector("even: u + 1; odd: 0").unwrap();
        assert_eq!(even, Poly::linear(Scalar::one()));
        assert!(odd.is_zero());
        assert_eq!(format_vector(&even, &odd), "even: u + 1; odd: 0");
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_element("3/2*G(1/2,0)+L(2,1)", Sector::NSB).unwrap();
        let b = parse_element("  3/2 * G( 1/2 , 0 )  +  L( 2 , 1 ) ", Sector::NSB).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_offsets_are_in_range() {
        for bad in ["", "L(", "L(1,0) +", "2 ** L(1,0)", "G(2/2,0)", "G(1/3,0)", "1/0", "u^"] {
            if let Err(e) = parse_element(bad, Sector::RB) {
                assert!(e.offset() < bad.len().max(1), "offset {} for {:?}", e.offset(), bad);
            }
            if let Err(e) = parse_poly(bad) {
                assert!(e.offset() < bad.len().max(1));
            }
        }
    }

    prop_compose! {
        fn arb_scalar()(rn in -30i64..30, rd in 1i64..9, sn in -30i64..30, sd in 1i64..9) -> Scalar {
            Scalar::new(rat(rn, rd), rat(sn, sd))
        }
    }

    fn arb_key(sector: Sector) -> impl Strategy<Value = BasisKey> {
        (any::<bool>(), -6i64..=6, 0u32..4).prop_map(move |(even, idx, grade)| {
            if even {
                BasisKey::l(idx, grade)
            } else {
                match sector {
                    Sector::RB => BasisKey::g_int(idx, grade),
                    Sector::NSB => BasisKey::g(2 * idx + 1, grade),
                }
            }
        })
    }

    fn arb_element(sector: Sector) -> impl Strategy<Value = AlgebraElement> {
        prop::collection::vec((arb_key(sector), arb_scalar()), 0..6).prop_map(move |terms| {
            let mut el = AlgebraElement::zero(sector);
            for (k, c) in terms {
                el.add_term(k, c).unwrap();
            }
            el
        })
    }

    proptest! {
        #[test]
        fn scalar_round_trip(s in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn element_round_trip_rb(el in arb_element(Sector::RB)) {
            prop_assert_eq!(parse_element(&format_element(&el), Sector::RB).unwrap(), el);
        }

        #[test]
        fn element_round_trip_nsb(el in arb_element(Sector::NSB)) {
            prop_assert_eq!(parse_element(&format_element(&el), Sector::NSB).unwrap(), el);
        }

        #[test]
        fn poly_round_trip(coeffs in prop::collection::vec((-20i64..20, 1i64..6, -20i64..20, 1i64..6), 0..6)) {
            let p = Poly::new(coeffs.into_iter().map(|(a, b, c, d)| Scalar::new(rat(a, b), rat(c, d))).collect());
            prop_assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);
        }
    }
}
