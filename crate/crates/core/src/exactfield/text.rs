//! Text encoding of scalars: `a+b*i+c*r2+d*i*r2`, rationals written `p/q`.
//!
//! Display emits the canonical form (zero terms dropped, unit coefficients
//! elided, basis order `1, i, r2, i*r2`); the parser accepts any sum of such
//! terms with optional whitespace, so canonical text round-trips bit-exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldError, Scalar};

const BASIS: [&str; 4] = ["", "i", "r2", "i*r2"];

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coef, name) in self.parts().into_iter().zip(BASIS) {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            if coef.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if name.is_empty() {
                write_rational(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write_rational(f, &mag)?;
                write!(f, "*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse { offset: self.pos, msg: msg.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected digits"));
        }
        let n = rest[..len].parse::<BigInt>().map_err(|_| self.err("bad integer"))?;
        self.pos += len;
        Ok(n)
    }

    fn rational(&mut self) -> Result<BigRational, FieldError> {
        let n = self.integer()?;
        if self.eat("/") {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn basis(&mut self) -> Option<usize> {
        if self.eat("i") {
            let save = self.pos;
            if self.eat("*") {
                if self.eat("r2") {
                    return Some(3);
                }
                self.pos = save;
            }
            Some(1)
        } else if self.eat("r2") {
            Some(2)
        } else {
            None
        }
    }

    /// One signed term: `[coef [*]] basis` or a bare rational.
    fn term(&mut self) -> Result<(usize, BigRational), FieldError> {
        if let Some(k) = self.basis() {
            return Ok((k, BigRational::one()));
        }
        let q = self.rational()?;
        let save = self.pos;
        if self.eat("*") {
            if let Some(k) = self.basis() {
                return Ok((k, q));
            }
            self.pos = save;
        }
        Ok((0, q))
    }
}

/// Parses a scalar literal starting at the beginning of `src`, returning the
/// value and the number of bytes consumed.
pub fn parse_scalar_prefix(src: &str) -> Result<(Scalar, usize), FieldError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut parts = [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()];
    let mut neg = cur.eat("-");
    if !neg {
        cur.eat("+");
    }
    loop {
        let (k, q) = cur.term()?;
        if neg {
            parts[k] -= q;
        } else {
            parts[k] += q;
        }
        match cur.peek() {
            Some('+') => {
                cur.eat("+");
                neg = false;
            }
            Some('-') => {
                cur.eat("-");
                neg = true;
            }
            _ => break,
        }
    }
    let [a, b, c, d] = parts;
    Ok((Scalar::new(a, b, c, d), cur.pos))
}

impl FromStr for Scalar {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (x, used) = parse_scalar_prefix(s)?;
        if !s[used..].trim().is_empty() {
            return Err(FieldError::Parse { offset: used, msg: "trailing input".into() });
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((Scalar::one() + Scalar::i()).to_string(), "1+i");
        assert_eq!(Scalar::from_ratios((-1, 2), (0, 1), (3, 1), (-1, 1)).to_string(), "-1/2+3*r2-i*r2");
        assert_eq!((-Scalar::i()).to_string(), "-i");
    }

    #[test]
    fn parses_loose_forms() {
        let x: Scalar = " 1/2 + 3 * i - r2 + 2*i*r2 + 1/2".parse().unwrap();
        assert_eq!(x, Scalar::from_ratios((1, 1), (3, 1), (-1, 1), (2, 1)));
        let y: Scalar = "i".parse().unwrap();
        assert_eq!(y, Scalar::i());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1+".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        for s in ["0", "1+i", "-3/7*i+r2", "5/2*i*r2", "-1-i-r2-i*r2"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}
