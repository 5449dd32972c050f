//! The matrix-entry grammar: exact rationals and sums of
//! generator-power terms, e.g. `7`, `-3/2`, `z^2 - 1/2*z + 1`. Parsing is
//! strict and reports the byte offset of the first problem; rendering is
//! canonical (descending powers, no redundant terms, `p/q` rationals), so
//! parsing a rendered entry always returns the original element.

use monodromy_core::{FieldElement, NumberField, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A rejected entry: byte offset into the entry string plus a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryError {
    pub offset: usize,
    pub message: String,
}

impl EntryError {
    fn new(offset: usize, message: impl Into<String>) -> EntryError {
        EntryError {
            offset,
            message: message.into(),
        }
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_spaces(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn digits(&mut self, what: &str) -> Result<BigInt, EntryError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(EntryError::new(start, format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    /// rational := digits [ '/' digits(nonzero) ]
    fn rational(&mut self) -> Result<Q, EntryError> {
        let numer = self.digits("digits")?;
        self.skip_spaces();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_spaces();
            let denom_at = self.pos;
            let denom = self.digits("digits after '/'")?;
            if denom.is_zero() {
                return Err(EntryError::new(denom_at, "zero denominator"));
            }
            Ok(Q::new(numer, denom))
        } else {
            Ok(Q::from_integer(numer))
        }
    }

    /// zpow := 'z' [ '^' digits ]; returns the power.
    fn generator_power(&mut self, degree: usize) -> Result<usize, EntryError> {
        let at = self.pos;
        if self.bump() != Some(b'z') {
            return Err(EntryError::new(at, "expected 'z'"));
        }
        if degree == 1 {
            return Err(EntryError::new(
                at,
                "the rationals have no generator 'z'",
            ));
        }
        let mut power = 1usize;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let power_at = self.pos;
            let p = self.digits("digits after '^'")?;
            power = usize::try_from(&p)
                .map_err(|_| EntryError::new(power_at, "power out of range"))?;
            if power == 0 {
                return Err(EntryError::new(power_at, "write the constant term without 'z^0'"));
            }
        }
        if power >= degree {
            return Err(EntryError::new(
                at,
                format!("power {power} exceeds the field degree {degree}"),
            ));
        }
        Ok(power)
    }

    /// term := rational [ '*' zpow ] | zpow
    fn term(&mut self, degree: usize) -> Result<(Q, usize), EntryError> {
        match self.peek() {
            Some(b'z') => Ok((Q::one(), self.generator_power(degree)?)),
            Some(b) if b.is_ascii_digit() => {
                let coeff = self.rational()?;
                self.skip_spaces();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_spaces();
                    let power = self.generator_power(degree)?;
                    Ok((coeff, power))
                } else {
                    Ok((coeff, 0))
                }
            }
            _ => Err(EntryError::new(
                self.pos,
                "expected a rational number or a generator term",
            )),
        }
    }
}

/// Parse one matrix entry over the given field.
pub fn parse_entry(text: &str, field: NumberField) -> Result<FieldElement, EntryError> {
    if let Some(bad) = text.bytes().position(|b| !b.is_ascii()) {
        return Err(EntryError::new(bad, "non-ASCII byte in entry"));
    }
    let degree = field.degree();
    let mut coords = vec![Q::zero(); degree];
    let mut s = Scanner {
        bytes: text.as_bytes(),
        pos: 0,
    };
    s.skip_spaces();
    let mut negate = false;
    if s.peek() == Some(b'-') {
        s.pos += 1;
        s.skip_spaces();
        negate = true;
    }
    loop {
        let (coeff, power) = s.term(degree)?;
        let signed = if negate { -coeff } else { coeff };
        coords[power] += signed;
        s.skip_spaces();
        match s.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => {
                return Err(EntryError::new(s.pos, "expected '+', '-', or end of entry"));
            }
        }
        s.pos += 1;
        s.skip_spaces();
    }
    Ok(FieldElement::new(field, coords))
}

fn term_string(magnitude: &Q, power: usize) -> String {
    let coeff = magnitude.to_string();
    match power {
        0 => coeff,
        _ => {
            let z = if power == 1 {
                "z".to_string()
            } else {
                format!("z^{power}")
            };
            if magnitude.is_one() {
                z
            } else {
                format!("{coeff}*{z}")
            }
        }
    }
}

/// Canonical rendering: terms by descending power, ` + ` / ` - `
/// separators, coefficient 1 left implicit on generator terms.
pub fn render_entry(e: &FieldElement) -> String {
    let nonzero: Vec<(usize, &Q)> = e
        .coords()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if nonzero.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (power, coeff)) in nonzero.iter().enumerate() {
        let negative = coeff.is_negative();
        let magnitude = if negative { -(*coeff).clone() } else { (*coeff).clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&term_string(&magnitude, *power));
    }
    out
}

/// Strict signed integer: optional '-', then digits; nothing else.
pub fn parse_i64(text: &str) -> Result<i64, EntryError> {
    let bytes = text.as_bytes();
    let digits_at = usize::from(bytes.first() == Some(&b'-'));
    if bytes.len() == digits_at || !bytes[digits_at..].iter().all(u8::is_ascii_digit) {
        return Err(EntryError::new(digits_at, "expected an integer"));
    }
    text.parse()
        .map_err(|_| EntryError::new(0, "integer out of range"))
}

/// Strict unsigned integer.
pub fn parse_usize(text: &str) -> Result<usize, EntryError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(EntryError::new(0, "expected an unsigned integer"));
    }
    text.parse()
        .map_err(|_| EntryError::new(0, "integer out of range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use monodromy_core::Q;

    fn cyc8() -> NumberField {
        NumberField::cyclotomic(8).unwrap()
    }

    #[test]
    fn parses_integers_and_rationals() {
        let rat = NumberField::Rationals;
        assert_eq!(
            parse_entry("7", rat).unwrap(),
            FieldElement::from_integer(rat, 7)
        );
        assert_eq!(
            parse_entry("-3/2", rat).unwrap(),
            FieldElement::from_rational(rat, Q::new((-3).into(), 2.into()))
        );
        assert_eq!(
            parse_entry(" 0 ", rat).unwrap(),
            FieldElement::zero(rat)
        );
    }

    #[test]
    fn parses_generator_sums() {
        let f = cyc8();
        let z = FieldElement::generator(f);
        assert_eq!(parse_entry("z", f).unwrap(), z);
        assert_eq!(parse_entry("z^3", f).unwrap(), z.pow(3));
        let half = FieldElement::from_rational(f, Q::new(1.into(), 2.into()));
        let expected = z.pow(2).sub(&half.mul(&z)).add(&FieldElement::one(f));
        assert_eq!(parse_entry("z^2 - 1/2*z + 1", f).unwrap(), expected);
        // Repeated powers accumulate.
        assert_eq!(
            parse_entry("z + z", f).unwrap(),
            z.add(&z)
        );
    }

    #[test]
    fn rejects_malformed_entries_with_offsets() {
        let rat = NumberField::Rationals;
        let err = parse_entry("1//2", rat).unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_entry("1/0", rat).unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.message, "zero denominator");
        let err = parse_entry("z", rat).unwrap_err();
        assert_eq!(err.message, "the rationals have no generator 'z'");
        let err = parse_entry("z^9", cyc8()).unwrap_err();
        assert!(err.message.contains("exceeds the field degree"));
        assert!(parse_entry("", rat).is_err());
        assert!(parse_entry("1 2", rat).is_err());
        assert!(parse_entry("1 +", rat).is_err());
        assert!(parse_entry("--1", rat).is_err());
        assert!(parse_entry("1.5", rat).is_err());
    }

    #[test]
    fn renders_canonically() {
        let f = cyc8();
        let z = FieldElement::generator(f);
        assert_eq!(render_entry(&FieldElement::zero(f)), "0");
        assert_eq!(render_entry(&z), "z");
        assert_eq!(render_entry(&z.negate()), "-z");
        let half = FieldElement::from_rational(f, Q::new(1.into(), 2.into()));
        let e = z.pow(2).sub(&half.mul(&z)).add(&FieldElement::one(f));
        assert_eq!(render_entry(&e), "z^2 - 1/2*z + 1");
    }

    #[test]
    fn parse_inverts_render_on_random_elements() {
        use monodromy_core::NumberField as NF;
        let fields = [
            NF::Rationals,
            NF::quadratic(-1).unwrap(),
            NF::quadratic(5).unwrap(),
            NF::cyclotomic(3).unwrap(),
            NF::cyclotomic(8).unwrap(),
            NF::cyclotomic(12).unwrap(),
        ];
        for field in fields {
            let degree = field.degree();
            // A spread of sign and magnitude patterns over each basis slot.
            for pattern in 0..81 {
                let mut coords = Vec::with_capacity(degree);
                let mut p = pattern;
                for _ in 0..degree {
                    let c = match p % 3 {
                        0 => Q::zero(),
                        1 => Q::new(3.into(), 2.into()),
                        _ => Q::new((-7).into(), 3.into()),
                    };
                    p /= 3;
                    coords.push(c);
                }
                let e = FieldElement::new(field, coords);
                let rendered = render_entry(&e);
                assert_eq!(parse_entry(&rendered, field).unwrap(), e, "{rendered}");
            }
        }
    }

    #[test]
    fn strict_integers() {
        assert_eq!(parse_i64("-12").unwrap(), -12);
        assert!(parse_i64("+12").is_err());
        assert!(parse_i64("1 2").is_err());
        assert!(parse_i64("").is_err());
        assert_eq!(parse_usize("12").unwrap(), 12);
        assert!(parse_usize("-1").is_err());
    }
}
