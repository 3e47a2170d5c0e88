//! Octonion literals of the form `a0+a1e1+...+a7e7`.
//!
//! Terms are signed decimals optionally followed by a unit tag `e1`..`e7`; a bare tag
//! means a unit coefficient and omitted units default to zero. A lowercase `e` followed
//! by a digit is always a unit tag, so `3.5e1` reads as `3.5 e1`. Scientific notation
//! needs an explicit exponent sign (`1e-3`, `2e+4`) or an uppercase `E` (`2E4`).
//! Whitespace is allowed around the `+`/`-` separators.

use std::str::FromStr;

use crate::error::Error;
use crate::octonion::Octonion;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid octonion literal '{input}': {reason}")]
pub struct LiteralError {
    pub input: String,
    pub reason: String,
}

impl From<LiteralError> for Error {
    fn from(e: LiteralError) -> Self {
        Error::InvalidConfig(e.to_string())
    }
}

struct Cursor<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.chars.get(self.pos + k).copied()
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        self.pos - start
    }
}

pub fn parse_octonion(input: &str) -> Result<Octonion, LiteralError> {
    let fail = |reason: &str| LiteralError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let tokens: Vec<&str> = input.split_ascii_whitespace().collect();
    for pair in tokens.windows(2) {
        let joined = pair[0].ends_with(['+', '-']) || pair[1].starts_with(['+', '-']);
        if !joined {
            return Err(fail("whitespace inside a term"));
        }
    }
    let compact: Vec<u8> = tokens.concat().into_bytes();
    if compact.is_empty() {
        return Err(fail("empty literal"));
    }
    let mut cur = Cursor {
        chars: &compact,
        pos: 0,
    };
    let mut coeffs = [0.0; 8];
    let mut first = true;
    while cur.peek().is_some() {
        let sign = match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                1.0
            }
            Some(b'-') => {
                cur.pos += 1;
                -1.0
            }
            _ if first => 1.0,
            _ => return Err(fail("expected '+' or '-' between terms")),
        };
        first = false;

        let start = cur.pos;
        let int_digits = cur.digits();
        let mut frac_digits = 0;
        if cur.peek() == Some(b'.') {
            cur.pos += 1;
            frac_digits = cur.digits();
        }
        let has_number = int_digits + frac_digits > 0;
        if !has_number && cur.pos > start {
            return Err(fail("lone decimal point"));
        }
        if has_number {
            let exp_follows = matches!(
                (cur.peek(), cur.peek_at(1)),
                (Some(b'E'), _) | (Some(b'e'), Some(b'+' | b'-'))
            );
            if exp_follows {
                cur.pos += 1;
                if matches!(cur.peek(), Some(b'+' | b'-')) {
                    cur.pos += 1;
                }
                if cur.digits() == 0 {
                    return Err(fail("exponent without digits"));
                }
            }
        }
        let number = std::str::from_utf8(&compact[start..cur.pos]).expect("ascii slice");
        let magnitude = if has_number {
            number.parse::<f64>().map_err(|_| fail("bad number"))?
        } else {
            1.0
        };

        let unit = if cur.peek() == Some(b'e') {
            cur.pos += 1;
            match cur.peek() {
                Some(d @ b'1'..=b'7') => {
                    cur.pos += 1;
                    (d - b'0') as usize
                }
                _ => return Err(fail("unit tag must be e1..e7")),
            }
        } else if has_number {
            0
        } else {
            return Err(fail("term has neither coefficient nor unit"));
        };
        if matches!(cur.peek(), Some(b'0'..=b'9' | b'.')) {
            return Err(fail("unexpected digits after unit tag"));
        }
        coeffs[unit] += sign * magnitude;
    }
    Octonion::try_new(coeffs).map_err(|_| fail("coefficient out of range"))
}

/// Positional form `a0,a1,...,a7`; fewer than eight entries pad with zeros.
pub fn parse_tuple(input: &str) -> Result<Octonion, LiteralError> {
    let fail = |reason: &str| LiteralError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = input.split(',').map(str::trim).collect();
    if parts.is_empty() || parts.len() > 8 || parts.iter().any(|p| p.is_empty()) {
        return Err(fail("expected 1 to 8 comma-separated reals"));
    }
    let mut coeffs = [0.0; 8];
    for (slot, p) in coeffs.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|_| fail("bad number"))?;
    }
    Octonion::try_new(coeffs).map_err(|_| fail("coefficient out of range"))
}

impl FromStr for Octonion {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_octonion(s)
    }
}
