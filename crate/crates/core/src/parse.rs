//! Recursive-descent parsing shared by the textual grammars for sheaves,
//! module classes, Hall elements, tensors and `K₀` classes.
//!
//! Whitespace is insignificant everywhere. Positions in errors are byte
//! offsets into the original input.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ParseError;
use crate::Rational;

pub(crate) type PResult<T> = std::result::Result<T, ParseError>;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn position(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn error(&mut self, message: impl Into<String>) -> ParseError {
        let pos = self.position();
        ParseError::new(pos, message)
    }

    /// Consumes `token` if the remaining input starts with it.
    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> PResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error(format!("expected `{token}`, found {found}")))
        }
    }

    pub fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn digits(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    pub fn integer(&mut self) -> PResult<BigInt> {
        let negative = self.eat("-");
        if !negative {
            self.eat("+");
        }
        let digits = self.digits()?;
        let value: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -value } else { value })
    }

    pub fn i64(&mut self) -> PResult<i64> {
        let start = self.position();
        let value = self.integer()?;
        i64::try_from(value).map_err(|_| ParseError::new(start, "integer out of range"))
    }

    pub fn u32(&mut self) -> PResult<u32> {
        let start = self.position();
        let digits = self.digits()?;
        digits
            .parse()
            .map_err(|_| ParseError::new(start, "integer out of range"))
    }

    /// `int` or `int/int` with a nonzero denominator.
    pub fn rational(&mut self) -> PResult<Rational> {
        let numer = self.integer()?;
        if self.eat("/") {
            let start = self.position();
            let denom: BigInt = self.digits()?.parse().expect("ascii digits");
            if denom.is_zero() {
                return Err(ParseError::new(start, "zero denominator"));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    /// Consumes an identifier made of ASCII letters and digits.
    pub fn ident(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first_ok = rest.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if !first_ok {
            return Err(self.error("expected an identifier"));
        }
        let len = rest.bytes().take_while(u8::is_ascii_alphanumeric).count();
        self.pos += len;
        Ok(&self.src[start..start + len])
    }
}
