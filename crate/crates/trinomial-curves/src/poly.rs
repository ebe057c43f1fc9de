//! Homogeneous trinomials in `x, y, z`: parsing, validation, and canonical
//! text form.
//!
//! Grammar: `trinomial := term '+' term '+' term`,
//! `term := [INT '*'] factor ('*' factor)*`, `factor := VAR ['^' INT]`,
//! `VAR ∈ {x, y, z}`; whitespace is insignificant. Nonzero integer
//! coefficients are accepted and dropped (over an algebraically closed field
//! they scale away for an invertible exponent matrix); a flag on the result
//! records that this normalization happened.

use std::fmt;
use thiserror::Error;

/// Largest accepted degree; keeps every downstream integer comfortably exact.
pub const MAX_DEGREE: u32 = 1_000_000;

/// A monomial `x^ex * y^ey * z^ez`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
}

impl Monomial {
    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { ex, ey, ez }
    }

    /// Total degree `ex + ey + ez`.
    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    /// Exponent of the variable with the given index (0 = x, 1 = y, 2 = z).
    pub fn exponent(&self, var: usize) -> u32 {
        match var {
            0 => self.ex,
            1 => self.ey,
            2 => self.ez,
            _ => panic!("variable index out of range: {var}"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (var, e) in [("x", self.ex), ("y", self.ey), ("z", self.ez)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Three pairwise-distinct monomials of one common degree `d ≥ 2`.
///
/// Equality compares the monomial triple (in order) and ignores the
/// coefficient-normalization flag, so `parse(format(t)) == t` holds even when
/// `t` was built from input with scaled coefficients.
#[derive(Debug, Clone)]
pub struct Trinomial {
    monomials: [Monomial; 3],
    degree: u32,
    coefficients_dropped: bool,
}

impl PartialEq for Trinomial {
    fn eq(&self, other: &Self) -> bool {
        self.monomials == other.monomials
    }
}

impl Eq for Trinomial {}

impl Trinomial {
    /// Validates and builds a trinomial from three monomials (input order kept).
    pub fn new(monomials: [Monomial; 3]) -> Result<Self, ParseError> {
        let degrees = [
            monomials[0].degree(),
            monomials[1].degree(),
            monomials[2].degree(),
        ];
        if degrees[0] != degrees[1] || degrees[0] != degrees[2] {
            return Err(ParseError::NotHomogeneous { degrees });
        }
        for i in 1..3 {
            for j in 0..i {
                if monomials[i] == monomials[j] {
                    return Err(ParseError::DuplicateMonomial { index: i });
                }
            }
        }
        let degree = degrees[0];
        if degree < 2 {
            return Err(ParseError::SyntaxError {
                offset: 0,
                message: format!("degree {degree} is below the minimum of 2"),
            });
        }
        if degree > MAX_DEGREE {
            return Err(ParseError::SyntaxError {
                offset: 0,
                message: format!("degree {degree} exceeds the maximum of {MAX_DEGREE}"),
            });
        }
        Ok(Trinomial {
            monomials,
            degree,
            coefficients_dropped: false,
        })
    }

    pub fn monomials(&self) -> &[Monomial; 3] {
        &self.monomials
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// True when parsing dropped a coefficient different from +1.
    pub fn coefficients_dropped(&self) -> bool {
        self.coefficients_dropped
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_trinomial(self))
    }
}

/// Parse failures; `SyntaxError` carries the byte offset into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected exactly three '+'-separated terms, found {found}")]
    NotTrinomial { found: usize },
    #[error("term {index} repeats an earlier monomial")]
    DuplicateMonomial { index: usize },
    #[error("terms have unequal degrees {degrees:?}")]
    NotHomogeneous { degrees: [u32; 3] },
    #[error("zero coefficient at byte {offset}")]
    ZeroCoefficient { offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, start: usize) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: start,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::SyntaxError {
            offset: self.pos,
            message: message.into(),
        }
    }

    /// Reads a nonnegative integer literal, rejecting values above `limit`.
    fn integer(&mut self, limit: u64) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .filter(|&v| v <= limit)
                .ok_or(ParseError::SyntaxError {
                    offset: start,
                    message: format!("integer literal exceeds the limit of {limit}"),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        Ok(value)
    }
}

/// Parses one term (within `text[start..end]`) into a monomial, reporting
/// whether a coefficient other than +1 was dropped.
fn parse_term(text: &str, start: usize, end: usize) -> Result<(Monomial, bool), ParseError> {
    let mut sc = Scanner::new(&text[..end], start);
    sc.skip_ws();
    let mut dropped = false;

    // Optional signed integer coefficient followed by '*'.
    let mut saw_coefficient = false;
    if let Some(b) = sc.peek() {
        if b == b'-' || b.is_ascii_digit() {
            let coeff_offset = sc.pos;
            let negative = b == b'-';
            if negative {
                sc.pos += 1;
                sc.skip_ws();
            }
            let magnitude = sc.integer(u64::MAX / 10)?;
            if magnitude == 0 {
                return Err(ParseError::ZeroCoefficient {
                    offset: coeff_offset,
                });
            }
            if negative || magnitude != 1 {
                dropped = true;
            }
            saw_coefficient = true;
            sc.skip_ws();
            match sc.peek() {
                Some(b'*') => {
                    sc.pos += 1;
                }
                _ => return Err(sc.err("expected '*' after the coefficient")),
            }
        }
    }

    let mut exps = [0u64; 3];
    let mut saw_factor = false;
    loop {
        sc.skip_ws();
        let var = match sc.peek() {
            Some(b'x') => 0,
            Some(b'y') => 1,
            Some(b'z') => 2,
            _ => {
                if saw_factor {
                    break;
                }
                let what = if saw_coefficient {
                    "expected a variable after '*'"
                } else {
                    "expected a variable or coefficient"
                };
                return Err(sc.err(what));
            }
        };
        sc.pos += 1;
        saw_factor = true;
        sc.skip_ws();
        let mut exp = 1u64;
        if sc.peek() == Some(b'^') {
            sc.pos += 1;
            sc.skip_ws();
            exp = sc.integer(MAX_DEGREE as u64)?;
        }
        exps[var] += exp; // repeated variables multiply, exponents add
        if exps[var] > MAX_DEGREE as u64 {
            return Err(ParseError::SyntaxError {
                offset: sc.pos,
                message: format!("exponent exceeds the limit of {MAX_DEGREE}"),
            });
        }
        sc.skip_ws();
        if sc.peek() == Some(b'*') {
            sc.pos += 1;
            sc.skip_ws();
            // after '*' a factor is mandatory
            match sc.peek() {
                Some(b'x') | Some(b'y') | Some(b'z') => continue,
                _ => return Err(sc.err("expected a variable after '*'")),
            }
        }
        break;
    }

    sc.skip_ws();
    if sc.pos != end {
        return Err(sc.err("unexpected character in term"));
    }
    Ok((
        Monomial::new(exps[0] as u32, exps[1] as u32, exps[2] as u32),
        dropped,
    ))
}

/// Parses a '+'-separated three-term polynomial in `x, y, z`.
pub fn parse_trinomial(text: &str) -> Result<Trinomial, ParseError> {
    // Term spans, split on top-level '+' (the grammar has no parentheses).
    let mut spans = Vec::new();
    let mut start = 0usize;
    for (i, b) in text.bytes().enumerate() {
        if b == b'+' {
            spans.push((start, i));
            start = i + 1;
        }
    }
    spans.push((start, text.len()));
    if spans.len() != 3 {
        // A stray character (e.g. '-' used as a term separator) corrupts the
        // '+'-split, so a span that is not a well-formed term points at the
        // real mistake more precisely than the term count does.
        for &(s, e) in &spans {
            if let Err(err @ ParseError::SyntaxError { .. }) = parse_term(text, s, e) {
                return Err(err);
            }
        }
        return Err(ParseError::NotTrinomial { found: spans.len() });
    }

    let mut monomials = [Monomial::new(0, 0, 0); 3];
    let mut dropped = false;
    for (i, &(s, e)) in spans.iter().enumerate() {
        let (m, d) = parse_term(text, s, e)?;
        monomials[i] = m;
        dropped |= d;
    }
    let mut t = Trinomial::new(monomials)?;
    t.coefficients_dropped = dropped;
    Ok(t)
}

/// Parses the exponent-matrix form `"a,b,c;d,e,f;g,h,i"` (row = monomial).
pub fn parse_exponent_form(text: &str) -> Result<Trinomial, ParseError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 3 {
        return Err(ParseError::NotTrinomial { found: rows.len() });
    }
    let mut monomials = [Monomial::new(0, 0, 0); 3];
    let mut offset = 0usize;
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 3 {
            return Err(ParseError::SyntaxError {
                offset,
                message: format!("expected three ','-separated exponents, found {}", cells.len()),
            });
        }
        let mut exps = [0u32; 3];
        let mut cell_offset = offset;
        for (j, cell) in cells.iter().enumerate() {
            let trimmed = cell.trim();
            let lead = cell.len() - cell.trim_start().len();
            exps[j] = trimmed
                .parse::<u32>()
                .ok()
                .filter(|&v| v <= MAX_DEGREE)
                .ok_or(ParseError::SyntaxError {
                    offset: cell_offset + lead,
                    message: format!("invalid exponent {trimmed:?}"),
                })?;
            cell_offset += cell.len() + 1; // skip the ',' (or ';' after the last cell)
        }
        monomials[i] = Monomial::new(exps[0], exps[1], exps[2]);
        offset += row.len() + 1;
    }
    Trinomial::new(monomials)
}

/// Canonical text such that `parse_trinomial(format_trinomial(t)) == t`.
pub fn format_trinomial(t: &Trinomial) -> String {
    let terms: Vec<String> = t.monomials().iter().map(|m| m.to_string()).collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(m: [(u32, u32, u32); 3]) -> Trinomial {
        Trinomial::new([
            Monomial::new(m[0].0, m[0].1, m[0].2),
            Monomial::new(m[1].0, m[1].1, m[1].2),
            Monomial::new(m[2].0, m[2].1, m[2].2),
        ])
        .unwrap()
    }

    #[test]
    fn parses_fermat_quartic() {
        let t = parse_trinomial("x^4 + y^4 + z^4").unwrap();
        assert_eq!(t, tri([(4, 0, 0), (0, 4, 0), (0, 0, 4)]));
        assert_eq!(t.degree(), 4);
        assert!(!t.coefficients_dropped());
    }

    #[test]
    fn parses_klein_quartic() {
        let t = parse_trinomial("x^3*y + y^3*z + z^3*x").unwrap();
        assert_eq!(t, tri([(3, 1, 0), (0, 3, 1), (1, 0, 3)]));
        assert_eq!(t.degree(), 4);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_trinomial("x^3*y+y^3*z+z^3*x").unwrap();
        let b = parse_trinomial("  x^3 * y +\ty^3*z + z ^ 3 * x ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exponent_one_and_repeated_variables() {
        let a = parse_trinomial("x*x^3 + y^4 + z^4").unwrap();
        assert_eq!(a, tri([(4, 0, 0), (0, 4, 0), (0, 0, 4)]));
        let b = parse_trinomial("x^2*y*z + y^4 + z^4").unwrap();
        assert_eq!(b, tri([(2, 1, 1), (0, 4, 0), (0, 0, 4)]));
    }

    #[test]
    fn coefficients_are_dropped_with_flag() {
        let t = parse_trinomial("2*x^4 + y^4 + z^4").unwrap();
        assert_eq!(t, tri([(4, 0, 0), (0, 4, 0), (0, 0, 4)]));
        assert!(t.coefficients_dropped());
        let neg = parse_trinomial("-1*x^4 + y^4 + z^4").unwrap();
        assert!(neg.coefficients_dropped());
        let one = parse_trinomial("1*x^4 + y^4 + z^4").unwrap();
        assert!(!one.coefficients_dropped());
    }

    #[test]
    fn rejects_zero_coefficient() {
        assert_eq!(
            parse_trinomial("x^4 + 0*y^4 + z^4"),
            Err(ParseError::ZeroCoefficient { offset: 6 })
        );
    }

    #[test]
    fn rejects_wrong_term_count() {
        assert_eq!(
            parse_trinomial("x^4 + y^4"),
            Err(ParseError::NotTrinomial { found: 2 })
        );
        assert_eq!(
            parse_trinomial("x^4 + y^4 + z^4 + x^2*y^2"),
            Err(ParseError::NotTrinomial { found: 4 })
        );
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        assert_eq!(
            parse_trinomial("x^3 + y^4 + z^4"),
            Err(ParseError::NotHomogeneous { degrees: [3, 4, 4] })
        );
    }

    #[test]
    fn rejects_duplicate_monomials() {
        assert_eq!(
            parse_trinomial("x^3*y + x^3*y + z^4"),
            Err(ParseError::DuplicateMonomial { index: 1 })
        );
        // same monomial written differently is still a duplicate
        assert_eq!(
            parse_trinomial("x^3*y + y*x^3 + z^4"),
            Err(ParseError::DuplicateMonomial { index: 1 })
        );
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        match parse_trinomial("x^4 + w^4 + z^4") {
            Err(ParseError::SyntaxError { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_trinomial("x^4 - y^4 + x^2*y^2") {
            Err(ParseError::SyntaxError { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_trinomial("x^ + y^4 + z^4") {
            Err(ParseError::SyntaxError { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn degree_bounds_are_enforced() {
        assert!(matches!(
            parse_trinomial("x + y + z"),
            Err(ParseError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_trinomial("x^2000000 + y^2000000 + z^2000000"),
            Err(ParseError::SyntaxError { .. })
        ));
        // the bound itself is accepted
        assert!(parse_trinomial("x^1000000 + y^1000000 + z^1000000").is_ok());
    }

    #[test]
    fn format_round_trips() {
        for t in [
            tri([(4, 0, 0), (0, 4, 0), (0, 0, 4)]),
            tri([(3, 1, 0), (0, 3, 1), (1, 0, 3)]),
            tri([(2, 1, 1), (0, 4, 0), (0, 0, 4)]),
        ] {
            let text = format_trinomial(&t);
            assert_eq!(parse_trinomial(&text).unwrap(), t, "text was {text:?}");
        }
        assert_eq!(
            format_trinomial(&tri([(2, 1, 1), (0, 4, 0), (0, 0, 4)])),
            "x^2*y*z + y^4 + z^4"
        );
    }

    #[test]
    fn exponent_form_parses() {
        let t = parse_exponent_form("3,1,0;0,3,1;1,0,3").unwrap();
        assert_eq!(t, tri([(3, 1, 0), (0, 3, 1), (1, 0, 3)]));
        let spaced = parse_exponent_form("4, 0, 0; 0, 4, 0; 0, 0, 4").unwrap();
        assert_eq!(spaced, tri([(4, 0, 0), (0, 4, 0), (0, 0, 4)]));
        assert_eq!(
            parse_exponent_form("1,2;3,4,5;6,7,8"),
            Err(ParseError::SyntaxError {
                offset: 0,
                message: "expected three ','-separated exponents, found 2".into()
            })
        );
        assert_eq!(
            parse_exponent_form("1,2,3;4,5,6"),
            Err(ParseError::NotTrinomial { found: 2 })
        );
    }
}
