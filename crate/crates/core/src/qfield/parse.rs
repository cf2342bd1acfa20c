//! Text form "a + b*X" for elements of k.
//!
//! Printing is canonical: the zero part is dropped, a unit coefficient on X
//! is written as a bare `X`, and a negative X-coefficient uses ` - `.
//! Parsing accepts the canonical form plus a few looser spellings
//! (`3X`, `X*3`, surrounding parentheses, arbitrary whitespace).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QuadElt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseQuadError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?} at byte {1}")]
    Unexpected(char, usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

fn render_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(super) fn render(x: &QuadElt) -> String {
    let (a, b) = (&x.a, &x.b);
    if b.is_zero() {
        return render_rat(a);
    }
    let xpart = |c: &BigRational| -> String {
        if c.is_one() {
            "X".to_string()
        } else {
            format!("{}*X", render_rat(c))
        }
    };
    if a.is_zero() {
        if (-b).is_one() {
            return "-X".to_string();
        }
        return xpart(b);
    }
    if b.is_negative() {
        format!("{} - {}", render_rat(a), xpart(&-b))
    } else {
        format!("{} + {}", render_rat(a), xpart(b))
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn err(&self) -> ParseQuadError {
        match self.s.get(self.i) {
            Some(&c) => ParseQuadError::Unexpected(c as char, self.i),
            None => ParseQuadError::Empty,
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.i]).ok()?.parse().ok()
    }

    fn rational(&mut self) -> Result<Option<BigRational>, ParseQuadError> {
        let Some(n) = self.integer() else { return Ok(None) };
        if self.eat(b'/') {
            let d = self.integer().ok_or_else(|| self.err())?;
            if d.is_zero() {
                return Err(ParseQuadError::ZeroDenominator);
            }
            return Ok(Some(BigRational::new(n, d)));
        }
        Ok(Some(BigRational::from_integer(n)))
    }

    // term := rational [ ['*'] 'X' ] | 'X' [ '*' rational ]
    fn term(&mut self) -> Result<QuadElt, ParseQuadError> {
        if self.eat(b'(') {
            let v = self.sum()?;
            if !self.eat(b')') {
                return Err(self.err());
            }
            if self.eat(b'*') {
                let w = self.term()?;
                return Ok(&v * &w);
            }
            return Ok(v);
        }
        if self.eat(b'X') {
            if self.eat(b'*') {
                let c = self.rational()?.ok_or_else(|| self.err())?;
                return Ok(QuadElt::new(BigRational::zero(), c));
            }
            return Ok(QuadElt::x());
        }
        let c = self.rational()?.ok_or_else(|| self.err())?;
        let save = self.i;
        if self.eat(b'*') {
            if self.eat(b'X') {
                return Ok(QuadElt::new(BigRational::zero(), c));
            }
            self.i = save;
            return Err(self.err());
        }
        if self.eat(b'X') {
            return Ok(QuadElt::new(BigRational::zero(), c));
        }
        Ok(QuadElt::from_rational(c))
    }

    fn sum(&mut self) -> Result<QuadElt, ParseQuadError> {
        let mut acc = QuadElt::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            let t = self.term()?;
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
            first = false;
        }
        Ok(acc)
    }
}

pub(super) fn parse(s: &str) -> Result<QuadElt, ParseQuadError> {
    let mut lx = Lexer { s: s.as_bytes(), i: 0 };
    if lx.peek().is_none() {
        return Err(ParseQuadError::Empty);
    }
    let v = lx.sum()?;
    if lx.peek().is_some() {
        return Err(ParseQuadError::Trailing(lx.i));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) {
        let v: QuadElt = s.parse().unwrap();
        assert_eq!(v.to_string(), s, "round trip of {s}");
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["0", "1", "-3", "X", "-X", "1 + X", "1 - 2*X", "-1/2*X", "5/3 - 7/2*X", "89 + 144*X"] {
            rt(s);
        }
    }

    #[test]
    fn loose_spellings() {
        let a: QuadElt = "(13 - 8X)".parse().unwrap();
        assert_eq!(a, QuadElt::from_ints(13, -8));
        let b: QuadElt = "X*3 + 1".parse().unwrap();
        assert_eq!(b, QuadElt::from_ints(1, 3));
        let c: QuadElt = " - 1/2 +X ".parse().unwrap();
        assert_eq!(c, QuadElt::from_fracs(-1, 2, 1, 1));
    }

    #[test]
    fn errors() {
        assert_eq!("".parse::<QuadElt>(), Err(ParseQuadError::Empty));
        assert_eq!("1/0".parse::<QuadElt>(), Err(ParseQuadError::ZeroDenominator));
        assert!("1 + Y".parse::<QuadElt>().is_err());
        assert!("1 2".parse::<QuadElt>().is_err());
    }
}
