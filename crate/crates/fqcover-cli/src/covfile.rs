//! The `.cov` text format: a field header followed by one congruence per
//! line.
//!
//! ```text
//! # sharp system for n = 2
//! q 2
//! 1 mod x
//! x mod x^2
//! ```
//!
//! Everything from `#` to the end of a line is a comment; blank lines are
//! ignored.  Input is UTF-8 with LF or CRLF line endings; output always
//! uses LF.  The format supports prime fields only — extension-field
//! coefficients have no integer literals — and requires every coefficient
//! literal to be already reduced, i.e. below q.

use std::fmt;

use fqcover::{Congruence, CongruenceSystem, Error, FieldDesc, Poly};

/// A syntax or semantic error in `.cov` text, with a 1-based line and
/// (byte) column position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, column, msg: msg.into() }
}

/// Relocate a polynomial parse error from a byte offset inside a slice to
/// a file position, given the column (0-based) where the slice starts.
fn poly_err(line: usize, col_base: usize, e: Error) -> ParseError {
    match e {
        Error::PolyParse { offset, msg } => err(line, col_base + offset + 1, msg),
        other => err(line, col_base + 1, other.to_string()),
    }
}

/// Reject coefficient literals that are not reduced mod q.
///
/// Digit runs in polynomial text are either exponents (preceded by `^`)
/// or coefficients; coefficients must already lie in 0..q so that the
/// printed form of a polynomial is the only accepted spelling of it.
fn check_coefficients(line: usize, col_base: usize, text: &str, q: u64) -> Result<(), ParseError> {
    let bytes = text.as_bytes();
    let mut prev_sig: Option<u8> = None;
    let mut pos = 0usize;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if prev_sig != Some(b'^') {
                let literal = &text[start..pos];
                let value: u64 = literal.parse().map_err(|_| {
                    err(line, col_base + start + 1, format!("coefficient '{literal}' does not fit in 64 bits"))
                })?;
                if value >= q {
                    return Err(err(
                        line,
                        col_base + start + 1,
                        format!("coefficient {value} is not reduced mod {q}; the text format requires coefficients in 0..{q}"),
                    ));
                }
            }
            prev_sig = Some(b'0');
        } else {
            if !b.is_ascii_whitespace() {
                prev_sig = Some(b);
            }
            pos += 1;
        }
    }
    Ok(())
}

/// Parse `.cov` text into a congruence system.
///
/// The result is canonicalized — monic moduli, residues reduced — but
/// duplicate congruence lines are kept, since coverage counts them with
/// multiplicity.
pub fn parse_system(text: &str) -> Result<CongruenceSystem, ParseError> {
    let mut field: Option<FieldDesc> = None;
    let mut header_line = 0usize;
    let mut congruences: Vec<Congruence> = Vec::new();

    for (idx, raw_line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let content = match line.find('#') {
            Some(cut) => &line[..cut],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let start = content.len() - content.trim_start().len();
        let body = content.trim();

        let Some(q_field) = &field else {
            // The first significant line must be the field header.
            let mut parts = body.splitn(2, char::is_whitespace);
            if parts.next() != Some("q") {
                return Err(err(line_no, start + 1, "expected field header 'q <prime>'"));
            }
            let rest = parts.next().map(str::trim).unwrap_or("");
            if rest.is_empty() {
                return Err(err(line_no, start + 2, "expected a prime after 'q'"));
            }
            let num_col = start + content[start..].find(rest).expect("rest is a substring") + 1;
            let q: u64 = rest.parse().map_err(|_| {
                err(line_no, num_col, format!("field order '{rest}' is not a 64-bit integer"))
            })?;
            field = Some(FieldDesc::prime(q).map_err(|_| {
                err(line_no, num_col, format!("{q} is not prime; the text format supports prime fields only"))
            })?);
            header_line = line_no;
            continue;
        };

        if body == "q" || body.starts_with("q ") || body.starts_with("q\t") {
            return Err(err(
                line_no,
                start + 1,
                format!("duplicate field header; the field was set on line {header_line}"),
            ));
        }

        // `<residue> mod <modulus>`: polynomial text contains no letter
        // except 'x', so the first 'm' can only start the separator.
        let Some(sep) = content.find('m') else {
            return Err(err(line_no, start + 1, "expected '<residue> mod <modulus>'"));
        };
        if !content[sep..].starts_with("mod") {
            return Err(err(line_no, sep + 1, "expected the separator 'mod'"));
        }
        let residue_text = &content[..sep];
        let modulus_base = sep + 3;
        let modulus_text = &content[modulus_base..];

        let q = q_field.order();
        check_coefficients(line_no, 0, residue_text, q)?;
        check_coefficients(line_no, modulus_base, modulus_text, q)?;
        let residue =
            Poly::parse(q_field, residue_text).map_err(|e| poly_err(line_no, 0, e))?;
        let modulus =
            Poly::parse(q_field, modulus_text).map_err(|e| poly_err(line_no, modulus_base, e))?;
        let modulus_col =
            modulus_base + (modulus_text.len() - modulus_text.trim_start().len()) + 1;
        let congruence = Congruence::new(residue, modulus).map_err(|e| match e {
            Error::ConstantModulus => {
                err(line_no, modulus_col, "congruence modulus must have degree at least 1")
            }
            other => err(line_no, start + 1, other.to_string()),
        })?;
        congruences.push(congruence);
    }

    let Some(field) = field else {
        return Err(err(1, 1, "missing field header 'q <prime>'"));
    };
    CongruenceSystem::from_congruences(&field, congruences)
        .map_err(|e| err(1, 1, e.to_string()))
}

/// Serialize a system in `.cov` form: header line, then one congruence
/// per line in system order, LF endings.
///
/// Only prime fields round-trip; extension-field systems are API-only and
/// their printed coefficients are not valid input.
pub fn format_system(system: &CongruenceSystem) -> String {
    let mut out = format!("q {}\n", system.field().order());
    for c in system.congruences() {
        out.push_str(&format!("{} mod {}\n", c.residue(), c.modulus()));
    }
    out
}
