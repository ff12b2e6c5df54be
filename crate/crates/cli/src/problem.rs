//! Problem-file parsing: a ring header, an optional ideal section, and an
//! optional elements section. Syntax errors carry 1-based line/column
//! positions.
//!
//! ```text
//! ring: QQ[x,y,z]
//! ideal:
//!   (x-z)^2
//!   3*x-y-2*z
//! elements:
//!   x*y
//! # comments and blank lines are ignored
//! ```

use binpart::arith::{Field, FieldKind, Scalar};
use binpart::poly::{Poly, PolyRing};
use binpart::Error;

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: PolyRing,
    pub ideal_gens: Vec<Poly>,
    pub elements: Vec<Poly>,
}

impl ProblemFile {
    /// Text form that reparses to an equal structure.
    pub fn print(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "ring: {}[{}]\n",
            field_header(self.ring.field()),
            self.ring.vars().join(",")
        ));
        if !self.ideal_gens.is_empty() {
            out.push_str("ideal:\n");
            for g in &self.ideal_gens {
                out.push_str(&format!("  {g}\n"));
            }
        }
        if !self.elements.is_empty() {
            out.push_str("elements:\n");
            for e in &self.elements {
                out.push_str(&format!("  {e}\n"));
            }
        }
        out
    }
}

pub fn field_header(field: &Field) -> String {
    match field.kind() {
        FieldKind::Rationals => "QQ".to_string(),
        FieldKind::Prime { p } => format!("GF({p})"),
        FieldKind::Ext { base, modulus, .. } => {
            if let FieldKind::Prime { p } = base.kind() {
                format!("GF({}^{})", p, modulus.deg())
            } else {
                field.describe()
            }
        }
        FieldKind::Func { base, params } => {
            format!("{}({})", field_header(base), params.join(","))
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, Error> {
    let mut ring: Option<PolyRing> = None;
    let mut ideal_gens = Vec::new();
    let mut elements = Vec::new();
    let mut section = SectionState::None;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("ring:") {
            let col = raw.find("ring:").unwrap_or(0) + 6;
            ring = Some(parse_ring_header(rest.trim(), lineno, col)?);
            continue;
        }
        if trimmed == "ideal:" {
            section = SectionState::Ideal;
            continue;
        }
        if trimmed == "elements:" {
            section = SectionState::Elements;
            continue;
        }
        let Some(r) = &ring else {
            return Err(Error::Parse {
                line: lineno,
                col: 1,
                msg: "a `ring:` header must come first".into(),
            });
        };
        let col0 = raw.len() - raw.trim_start().len() + 1;
        let poly = parse_poly_line(r, trimmed, lineno, col0)?;
        match section {
            SectionState::Ideal => ideal_gens.push(poly),
            SectionState::Elements => elements.push(poly),
            SectionState::None => {
                return Err(Error::Parse {
                    line: lineno,
                    col: col0,
                    msg: "polynomial outside of an `ideal:` or `elements:` section".into(),
                })
            }
        }
    }
    let ring = ring.ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: "missing `ring:` header".into(),
    })?;
    Ok(ProblemFile { ring, ideal_gens, elements })
}

enum SectionState {
    None,
    Ideal,
    Elements,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// `QQ[x,y,z]`, `GF(5)[x,y]`, `GF(2^3)[x]`, `QQ(u,v)[x,y]`, `QQ[]`
fn parse_ring_header(text: &str, line: usize, col0: usize) -> Result<PolyRing, Error> {
    let err = |col: usize, msg: &str| Error::Parse { line, col: col0 + col, msg: msg.into() };
    let open = text.find('[').ok_or_else(|| err(text.len(), "expected `[` with variables"))?;
    let close = text.rfind(']').ok_or_else(|| err(text.len(), "expected closing `]`"))?;
    if close < open {
        return Err(err(close, "mismatched brackets"));
    }
    let field_part = text[..open].trim();
    let vars_part = &text[open + 1..close];
    let field = parse_field(field_part, line, col0)?;
    let vars: Vec<String> = if vars_part.trim().is_empty() {
        Vec::new()
    } else {
        vars_part.split(',').map(|s| s.trim().to_string()).collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    for v in &vars {
        if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
            return Err(err(open + 1, "variable names must start with a letter"));
        }
        if !seen.insert(v.clone()) {
            return Err(err(open + 1, &format!("duplicate variable {v}")));
        }
        if let FieldKind::Func { params, .. } = field.kind() {
            if params.contains(v) {
                return Err(err(open + 1, &format!("variable {v} clashes with a parameter")));
            }
        }
    }
    Ok(PolyRing::new(field, vars))
}

fn parse_field(text: &str, line: usize, col0: usize) -> Result<Field, Error> {
    let err = |msg: String| Error::Parse { line, col: col0 + 1, msg };
    if text == "QQ" {
        return Ok(Field::rationals());
    }
    if let Some(rest) = text.strip_prefix("QQ(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| err("expected `)` after parameters".into()))?;
        let params: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
        if params.iter().any(|p| p.is_empty()) {
            return Err(err("empty parameter name".into()));
        }
        return Ok(Field::function_field(Field::rationals(), params));
    }
    if let Some(rest) = text.strip_prefix("GF(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| err("expected `)` after field size".into()))?;
        let (p_str, e_str) = match inner.find('^') {
            Some(i) => (&inner[..i], Some(&inner[i + 1..])),
            None => (inner, None),
        };
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| err(format!("invalid characteristic `{p_str}`")))?;
        if p < 2 || !is_prime(p) {
            return Err(err(format!("{p} is not prime")));
        }
        let e: u32 = match e_str {
            None => 1,
            Some(s) => s.trim().parse().map_err(|_| err(format!("invalid exponent `{s}`")))?,
        };
        if e == 0 {
            return Err(err("field exponent must be positive".into()));
        }
        return Field::gf(p, e).map_err(|e| err(e.to_string()));
    }
    if let Some(rest) = text.strip_prefix("GF") {
        // tolerate GF(p)(u,v) for finite function fields
        if let Some(i) = rest.find(")(") {
            let base = parse_field(&format!("GF{}", &rest[..i + 1]), line, col0)?;
            let inner = rest[i + 2..]
                .strip_suffix(')')
                .ok_or_else(|| err("expected `)` after parameters".into()))?;
            let params: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
            return Ok(Field::function_field(base, params));
        }
    }
    Err(err(format!("unknown field `{text}` (expected QQ, GF(p), GF(p^e) or QQ(u,...))")))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// polynomial expressions

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // (token, 1-based column)
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexer, Error> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(chars[start..i].iter().collect()), col));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(Lexer { toks, pos: 0, line, end_col: col0 + chars.len() })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col(), msg: msg.into() }
    }
}

/// Parse one polynomial line; division is allowed only by constants of the
/// coefficient field (so fractions of parameters work).
pub fn parse_poly_line(
    ring: &PolyRing,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Poly, Error> {
    let mut lx = lex(text, line, col0)?;
    let p = parse_expr(&mut lx, ring)?;
    if lx.peek().is_some() {
        return Err(lx.error("trailing input after polynomial"));
    }
    Ok(p)
}

fn parse_expr(lx: &mut Lexer, ring: &PolyRing) -> Result<Poly, Error> {
    let mut neg = false;
    if lx.peek() == Some(&Tok::Minus) {
        lx.next();
        neg = true;
    } else if lx.peek() == Some(&Tok::Plus) {
        lx.next();
    }
    let mut acc = parse_term(lx, ring)?;
    if neg {
        acc = acc.neg();
    }
    while let Some(tok) = lx.peek() {
        match tok {
            Tok::Plus => {
                lx.next();
                let t = parse_term(lx, ring)?;
                acc = acc.add(&t);
            }
            Tok::Minus => {
                lx.next();
                let t = parse_term(lx, ring)?;
                acc = acc.sub(&t);
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(lx: &mut Lexer, ring: &PolyRing) -> Result<Poly, Error> {
    let mut acc = parse_factor(lx, ring)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                let f = parse_factor(lx, ring)?;
                acc = acc.mul(&f);
            }
            Some(Tok::Slash) => {
                lx.next();
                let col = lx.col();
                let f = parse_factor(lx, ring)?;
                let c = f.as_constant().ok_or_else(|| Error::Parse {
                    line: lx.line,
                    col,
                    msg: "division only by coefficient-field constants".into(),
                })?;
                let inv = c.inv().ok_or_else(|| Error::Parse {
                    line: lx.line,
                    col,
                    msg: "division by zero".into(),
                })?;
                acc = acc.mul_scalar(&inv);
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, ring: &PolyRing) -> Result<Poly, Error> {
    let base = parse_base(lx, ring)?;
    if lx.peek() == Some(&Tok::Caret) {
        lx.next();
        match lx.next() {
            Some(Tok::Int(s)) => {
                let e: u32 = s.parse().map_err(|_| lx.error("exponent out of range"))?;
                Ok(base.pow(e))
            }
            _ => Err(Error::Parse {
                line: lx.line,
                col: lx.col().saturating_sub(0),
                msg: "expected integer exponent after `^`".into(),
            }),
        }
    } else {
        Ok(base)
    }
}

fn parse_base(lx: &mut Lexer, ring: &PolyRing) -> Result<Poly, Error> {
    match lx.next() {
        Some(Tok::LParen) => {
            let e = parse_expr(lx, ring)?;
            match lx.next() {
                Some(Tok::RParen) => Ok(e),
                _ => Err(lx.error("expected `)`")),
            }
        }
        Some(Tok::Int(s)) => {
            let n: i64 = s.parse().map_err(|_| lx.error("integer out of range"))?;
            Ok(ring.from_int(n))
        }
        Some(Tok::Ident(name)) => resolve_ident(ring, &name).ok_or_else(|| Error::Parse {
            line: lx.line,
            col: lx.col().saturating_sub(name.len()),
            msg: format!("unknown variable `{name}`"),
        }),
        Some(Tok::Minus) => {
            let b = parse_base(lx, ring)?;
            Ok(b.neg())
        }
        _ => Err(lx.error("expected a variable, number, or parenthesized expression")),
    }
}

fn resolve_ident(ring: &PolyRing, name: &str) -> Option<Poly> {
    if let Some(i) = ring.var_index(name) {
        return Some(ring.var(i));
    }
    // a coefficient-field parameter
    if let FieldKind::Func { .. } = ring.field().kind() {
        let pring = ring.field().param_ring();
        if let Some(i) = pring.var_index(name) {
            let s: Scalar = ring.field().from_fraction(pring.var(i), pring.one());
            return Some(ring.from_scalar(s));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_file() {
        let text = "ring: QQ[x,y,z]\nideal:\n  (x-z)^2\n  3*x-y-2*z\n";
        let pf = parse_problem(text).unwrap();
        assert_eq!(pf.ideal_gens.len(), 2);
        assert_eq!(pf.ring.nvars(), 3);
        // round trip
        let pf2 = parse_problem(&pf.print()).unwrap();
        assert_eq!(pf.ideal_gens, pf2.ideal_gens);
    }

    #[test]
    fn parse_gf5() {
        let text = "ring: GF(5)[x,y]\nideal:\n  -x+y-1\n  x^2-x-1\n";
        let pf = parse_problem(text).unwrap();
        assert_eq!(pf.ideal_gens.len(), 2);
        assert_eq!(pf.ring.field().characteristic(), 5);
    }

    #[test]
    fn parse_error_position() {
        let text = "ring: QQ[x]\nideal:\n  x^^2\n";
        let err = parse_problem(text).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col >= 4);
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn parse_parameters() {
        let text = "ring: QQ(u)[x]\nideal:\n  x^2 - u\nelements:\n  (u^2-1)/(u-1)\n";
        let pf = parse_problem(text).unwrap();
        assert_eq!(pf.ideal_gens.len(), 1);
        assert_eq!(pf.elements.len(), 1);
        let e = &pf.elements[0];
        assert!(e.is_constant());
        // (u^2-1)/(u-1) = u + 1
        let field = pf.ring.field();
        let pring = field.param_ring();
        let expect = field.from_fraction(pring.var(0).add(&pring.one()), pring.one());
        assert_eq!(e.as_constant().unwrap(), expect);
    }

    #[test]
    fn unknown_variable() {
        let text = "ring: QQ[x]\nideal:\n  x + w\n";
        assert!(matches!(parse_problem(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn prime_power_fields() {
        // GF(4) must be written GF(2^2); composite sizes are rejected
        assert!(parse_problem("ring: GF(4)[x]\nideal:\n  x - 1\n").is_err());
        let pf = parse_problem("ring: GF(2^2)[x]\nideal:\n  x - 1\n").unwrap();
        assert_eq!(pf.ring.field().characteristic(), 2);
        use num_traits_shim::*;
        assert_eq!(order_u64(pf.ring.field()), 4);
    }

    mod num_traits_shim {
        pub fn order_u64(f: &binpart::arith::Field) -> u64 {
            use std::str::FromStr;
            u64::from_str(&f.order().unwrap().to_string()).unwrap()
        }
    }
}
