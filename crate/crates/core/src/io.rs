//! Canonical family text format.
//!
//! ```text
//! PARTITE <r>
//! SIZES <n1> ... <nr>
//! <one edge per line: r space-separated 1-indexed symbols>
//! ```
//!
//! Writers emit edges in canonical lexicographic order with LF endings and no
//! trailing whitespace, so equal families serialize to identical bytes. Readers
//! are lenient: they accept edges in any order, deduplicate, and skip blank
//! lines and `#` comments (writers never emit either).

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::model::{Edge, Family, PartSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingPartiteHeader,
    MissingSizesHeader,
    BadInteger(String),
    WrongCoordinateCount { expected: usize, got: usize },
    InvalidFamily(Error),
}

/// A format error with the 1-indexed source line it was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::MissingPartiteHeader => {
                write!(f, "expected `PARTITE <r>` header")
            }
            ParseErrorKind::MissingSizesHeader => {
                write!(f, "expected `SIZES <n1> ... <nr>` header")
            }
            ParseErrorKind::BadInteger(tok) => write!(f, "`{tok}` is not a positive integer"),
            ParseErrorKind::WrongCoordinateCount { expected, got } => {
                write!(f, "edge has {got} coordinates, expected {expected}")
            }
            ParseErrorKind::InvalidFamily(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

fn fail(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Serializes a family to the canonical text format.
pub fn family_to_string(f: &Family) -> String {
    let spec = f.spec();
    let mut out = String::new();
    out.push_str(&format!("PARTITE {}\n", spec.part_count()));
    out.push_str("SIZES");
    for n in spec.sizes() {
        out.push_str(&format!(" {n}"));
    }
    out.push('\n');
    for e in f.edges() {
        let mut first = true;
        for x in e.coords() {
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Parses the canonical text format; see the module docs for leniency rules.
pub fn parse_family(text: &str) -> Result<Family, ParseError> {
    // (1-indexed line number, significant content)
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (pline, partite) = lines
        .next()
        .ok_or_else(|| fail(1, ParseErrorKind::MissingPartiteHeader))?;
    let r: usize = match partite.strip_prefix("PARTITE") {
        Some(rest) => parse_int(rest.trim(), pline)? as usize,
        None => return Err(fail(pline, ParseErrorKind::MissingPartiteHeader)),
    };

    let (sline, sizes_line) = lines
        .next()
        .ok_or_else(|| fail(pline, ParseErrorKind::MissingSizesHeader))?;
    let sizes: Vec<u32> = match sizes_line.strip_prefix("SIZES") {
        Some(rest) => rest
            .split_whitespace()
            .map(|tok| parse_int(tok, sline))
            .collect::<Result<_, _>>()?,
        None => return Err(fail(sline, ParseErrorKind::MissingSizesHeader)),
    };
    if sizes.len() != r {
        return Err(fail(
            sline,
            ParseErrorKind::WrongCoordinateCount {
                expected: r,
                got: sizes.len(),
            },
        ));
    }
    let spec = PartSpec::new(sizes).map_err(|e| fail(sline, ParseErrorKind::InvalidFamily(e)))?;

    let mut edges = Vec::new();
    let mut last_line = sline;
    for (line, text) in lines {
        last_line = line;
        let coords: Vec<u32> = text
            .split_whitespace()
            .map(|tok| parse_int(tok, line))
            .collect::<Result<_, _>>()?;
        if coords.len() != r {
            return Err(fail(
                line,
                ParseErrorKind::WrongCoordinateCount {
                    expected: r,
                    got: coords.len(),
                },
            ));
        }
        edges.push(Edge::new(coords));
    }
    Family::new(spec, edges).map_err(|e| fail(last_line, ParseErrorKind::InvalidFamily(e)))
}

pub fn write_family_file(f: &Family, path: &Path) -> std::io::Result<()> {
    fs::write(path, family_to_string(f))
}

pub fn read_family_file(path: &Path) -> Result<Family, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path)?;
    Ok(parse_family(&text)?)
}

fn parse_int(tok: &str, line: usize) -> Result<u32, ParseError> {
    tok.parse::<u32>()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| fail(line, ParseErrorKind::BadInteger(tok.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Family {
        let spec = PartSpec::symmetric(3, 2).unwrap();
        Family::new(
            spec,
            vec![
                Edge::new(vec![2, 1, 1]),
                Edge::new(vec![1, 1, 1]),
                Edge::new(vec![1, 2, 1]),
                Edge::new(vec![1, 1, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn writes_canonical_bytes() {
        let expect = "PARTITE 3\nSIZES 2 2 2\n1 1 1\n1 1 2\n1 2 1\n2 1 1\n";
        assert_eq!(family_to_string(&sample()), expect);
    }

    #[test]
    fn roundtrip_identity() {
        let f = sample();
        let g = parse_family(&family_to_string(&f)).unwrap();
        assert_eq!(f, g);
        assert_eq!(family_to_string(&g), family_to_string(&f));
    }

    #[test]
    fn reader_is_lenient() {
        let text = "# a comment\nPARTITE 2\n\nSIZES 2 3\n2 3\n1 1\n# more\n2 3\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(family_to_string(&f), "PARTITE 2\nSIZES 2 3\n1 1\n2 3\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_family("PARTITE 2\nSIZES 2 2\n1 1\n1 2 3\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(
            err.kind,
            ParseErrorKind::WrongCoordinateCount {
                expected: 2,
                got: 3
            }
        );
        let err = parse_family("PARTITE 2\nSIZES 2 2\n1 x\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::BadInteger(_)));
        let err = parse_family("SIZES 2 2\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MissingPartiteHeader));
        // out-of-range coordinate surfaces the model error
        let err = parse_family("PARTITE 2\nSIZES 2 2\n1 3\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::InvalidFamily(_)));
    }

    #[test]
    fn empty_family_roundtrip() {
        let spec = PartSpec::new(vec![2, 5]).unwrap();
        let f = Family::empty(spec);
        let s = family_to_string(&f);
        assert_eq!(s, "PARTITE 2\nSIZES 2 5\n");
        assert_eq!(parse_family(&s).unwrap(), f);
    }
}
