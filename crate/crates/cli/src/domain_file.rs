//! Line-oriented domain description files.
//!
//! ```text
//! # unit square with a crack
//! polygon: 0 0 1 0 1 1 0 1
//! crack: 0.5 0.5 0.9 0.5
//! conebase: k=1 components=1 dim=positive
//! ```
//!
//! `curve:` replaces `polygon:` when the outer contour samples a smooth curve.

use std::fmt::Write as _;

use conelayer_core::geometry::{Point2, PolygonalDomain};
use conelayer_core::groupoid::ConeBaseRecord;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainFile {
    pub domain: PolygonalDomain,
    pub cone_bases: Vec<ConeBaseRecord>,
}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Self { chars: src.chars().collect(), pos: 0, line, _src: src }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: self.pos + 1, expected: expected.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// `[+-]? (d+ (. d*)? | . d+) ([eE] [+-]? d+)?`, followed by whitespace or end.
    fn number(&mut self, what: &str) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
        }
        let int = self.digits();
        let mut frac = 0;
        if self.peek() == Some('.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int == 0 && frac == 0 {
            self.pos = start;
            return Err(self.error(what));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return Err(self.error("exponent digits"));
            }
        }
        if self.peek().is_some_and(|c| !c.is_whitespace()) {
            return Err(self.error("whitespace after number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let v: f64 = text.parse().map_err(|_| {
            let mut c = Cursor::new("", self.line);
            c.pos = start;
            c.error(what)
        })?;
        if !v.is_finite() {
            return Err(ParseError::Semantic { line: self.line, message: format!("number {text} is out of range") });
        }
        Ok(v)
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("'{c}'")))
        }
    }

    fn points(&mut self) -> Result<Vec<Point2>, ParseError> {
        let mut pts = Vec::new();
        while !self.at_end() {
            let x = self.number("x coordinate")?;
            if self.at_end() {
                return Err(self.error("y coordinate"));
            }
            let y = self.number("y coordinate")?;
            pts.push(Point2::new(x, y));
        }
        Ok(pts)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn cone_base(cur: &mut Cursor<'_>) -> Result<ConeBaseRecord, ParseError> {
    let (mut k, mut components, mut dim) = (None, None, None);
    while !cur.at_end() {
        let key_col = cur.pos;
        let key = cur.word();
        cur.expect('=')?;
        match key.as_str() {
            "k" | "components" => {
                cur.skip_ws();
                let v = cur.number("integer")?;
                if v.fract() != 0.0 || v < 0.0 || v > u32::MAX as f64 {
                    return Err(ParseError::Semantic { line: cur.line, message: format!("{key} must be a nonnegative integer") });
                }
                let slot = if key == "k" { &mut k } else { &mut components };
                if slot.replace(v as usize).is_some() {
                    return Err(ParseError::Semantic { line: cur.line, message: format!("{key} given twice") });
                }
            }
            "dim" => {
                let val = cur.word();
                let d = match val.as_str() {
                    "0" => false,
                    "positive" => true,
                    _ => return Err(cur.error("0 or positive")),
                };
                if dim.replace(d).is_some() {
                    return Err(ParseError::Semantic { line: cur.line, message: "dim given twice".into() });
                }
            }
            _ => {
                cur.pos = key_col;
                cur.skip_ws();
                return Err(cur.error("k, components or dim"));
            }
        }
    }
    let missing = |what: &str| ParseError::Semantic { line: cur.line, message: format!("conebase needs {what}=") };
    let k = k.ok_or_else(|| missing("k"))?;
    let components = components.ok_or_else(|| missing("components"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    ConeBaseRecord::new(k, components, dim).map_err(|e| ParseError::Semantic { line: cur.line, message: e.to_string() })
}

pub fn parse_domain_file(text: &str) -> Result<DomainFile, ParseError> {
    let mut outer: Option<(Vec<Point2>, bool)> = None;
    let mut holes = Vec::new();
    let mut cracks = Vec::new();
    let mut cone_bases = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let body = strip_comment(raw);
        let mut cur = Cursor::new(body, line_no);
        if cur.at_end() {
            continue;
        }
        let kw = cur.word();
        let known = ["polygon", "curve", "hole", "crack", "conebase"];
        if !known.contains(&kw.as_str()) {
            cur.pos = 0;
            cur.skip_ws();
            return Err(cur.error("polygon:, curve:, hole:, crack: or conebase:"));
        }
        cur.expect(':')?;
        let semantic = |message: String| ParseError::Semantic { line: line_no, message };
        match kw.as_str() {
            "polygon" | "curve" => {
                if outer.is_some() {
                    return Err(semantic("only one polygon: or curve: line is allowed".into()));
                }
                let pts = cur.points()?;
                if pts.len() < 3 {
                    return Err(semantic(format!("{kw} needs ≥ 3 vertices")));
                }
                outer = Some((pts, kw == "curve"));
            }
            "hole" => {
                let pts = cur.points()?;
                if pts.len() < 3 {
                    return Err(semantic("hole needs ≥ 3 vertices".into()));
                }
                holes.push(pts);
            }
            "crack" => {
                let pts = cur.points()?;
                if pts.len() < 2 {
                    return Err(semantic("crack needs ≥ 2 points".into()));
                }
                cracks.push(pts);
            }
            _ => cone_bases.push(cone_base(&mut cur)?),
        }
    }
    let (pts, smooth) = outer.ok_or(ParseError::Semantic {
        line: last_line.max(1),
        message: "missing polygon: or curve: line".into(),
    })?;
    let mut domain = if smooth { PolygonalDomain::smooth_curve(pts) } else { PolygonalDomain::polygon(pts) };
    domain.holes = holes;
    domain.cracks = cracks;
    Ok(DomainFile { domain, cone_bases })
}

fn write_points(out: &mut String, kw: &str, pts: &[Point2]) {
    out.push_str(kw);
    out.push(':');
    for p in pts {
        let _ = write!(out, " {} {}", p.x, p.y);
    }
    out.push('\n');
}

/// Canonical text; `parse_domain_file(&serialize_domain_file(f)) == Ok(f)`.
pub fn serialize_domain_file(f: &DomainFile) -> String {
    let mut out = String::new();
    let d = &f.domain;
    write_points(&mut out, if d.smooth_outer { "curve" } else { "polygon" }, &d.outer_boundary);
    for h in &d.holes {
        write_points(&mut out, "hole", h);
    }
    for c in &d.cracks {
        write_points(&mut out, "crack", c);
    }
    for r in &f.cone_bases {
        let dim = if r.positive_dimensional { "positive" } else { "0" };
        let _ = writeln!(out, "conebase: k={} components={} dim={dim}", r.k, r.components);
    }
    out
}
