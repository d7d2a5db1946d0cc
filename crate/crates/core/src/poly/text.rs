//! Human syntax (`t^4 - 2*t^2 + 1`) and the lossless JSON form
//! (`["1/1","0/1","-2/1","0/1","1/1"]`, lowest degree first).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::{Poly, PolyError, Rat};

/// Lossless `num/den` spelling, always with an explicit denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `n`, `-n` and `n/d` with an optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let err = |offset: usize, message: &str| PolyError::Parse {
        offset,
        message: message.to_string(),
    };
    let trimmed = s.trim();
    let lead = s.len() - s.trim_start().len();
    let (num_s, den_s) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| err(lead, &format!("invalid integer `{num_s}`")))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| {
            err(
                lead + num_s.len() + 1,
                &format!("invalid denominator `{d}`"),
            )
        })?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err(lead, "zero denominator"));
    }
    Ok(Rat::new(num, den))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<u8>,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<usize, PolyError> {
        let at = self.pos;
        let e = self.digits()?;
        usize::try_from(&e)
            .ok()
            .filter(|&e| e <= 100_000)
            .ok_or(PolyError::Parse {
                offset: at,
                message: "exponent too large".into(),
            })
    }

    /// One signless term: `[coeff] [*] [var [^ exp]]`.
    fn term(&mut self) -> Result<(Rat, usize), PolyError> {
        let mut coeff = Rat::one();
        let mut saw_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.digits()?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.digits()?;
                if d.is_zero() {
                    return Err(PolyError::Parse {
                        offset: at,
                        message: "zero denominator".into(),
                    });
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rat::new(num, den);
            saw_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                    return Err(self.error("expected the variable after `*`"));
                }
            }
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                match self.var {
                    None => self.var = Some(c),
                    Some(v) if v == c => {}
                    Some(v) => {
                        return Err(self.error(format!(
                            "mixed variables `{}` and `{}`",
                            v as char, c as char
                        )))
                    }
                }
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(self.error("variable names are a single letter"));
                }
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok((coeff, exp))
            }
            _ if saw_coeff => Ok((coeff, 0)),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let mut coeffs: Vec<Rat> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.error("empty polynomial")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rat::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rat::one()
                }
                Some(_) if first => Rat::one(),
                Some(c) => {
                    return Err(self.error(format!("expected `+` or `-`, found `{}`", c as char)))
                }
            };
            first = false;
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] += sign * c;
        }
        Ok(Poly::new(coeffs))
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
            var: None,
        }
        .parse()
    }
}

impl Poly {
    /// Lossless coefficient strings, lowest degree first.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly, PolyError> {
        let coeffs = items
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rat(s.as_ref()).map_err(|e| match e {
                    PolyError::Parse { message, .. } => PolyError::Parse {
                        offset: i,
                        message: format!("coefficient {i}: {message}"),
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rat_to_string(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Poly::from_coeff_strings(&items).map_err(de::Error::custom)
    }
}
