//! The text instance format.
//!
//! ```text
//! # R = K[x, y] / (x*y, y^2) as a module over itself, I = m
//! vars x, y;
//! component = (x*y, y^2);
//! I = (x, y);
//! Q = (x);        # optional
//! J = (x, y);     # optional
//! n_max = 30;     # optional, likewise k_max and window
//! ```
//!
//! A monomial is `1` or a `*`-separated product of `name` / `name^int`. `(0)`
//! is the zero ideal. Whitespace is insignificant and `#` starts a comment.

use std::fmt;

use thiserror::Error;

use crate::module::ModulePresentation;
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("syntax error at {line}:{column}: expected {expected}, found {found}")]
    Syntax { line: usize, column: usize, expected: String, found: String },

    #[error("error at {line}:{column}: {message}")]
    Semantic { line: usize, column: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceOptions {
    pub n_max: Option<u32>,
    pub k_max: Option<u32>,
    pub window: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub ring: AmbientRing,
    pub components: Vec<MonomialIdeal>,
    pub ideal_i: MonomialIdeal,
    pub ideal_q: Option<MonomialIdeal>,
    pub ideal_j: Option<MonomialIdeal>,
    pub options: InstanceOptions,
}

impl InstanceDocument {
    pub fn module(&self) -> ModulePresentation {
        ModulePresentation::new(self.ring.clone(), self.components.clone())
            .expect("components were validated at parse time")
    }

    /// Canonical text: one statement per line, generators in canonical order.
    pub fn to_canonical_string(&self) -> String {
        let mut out = format!("vars {};\n", self.ring.names().join(", "));
        for c in &self.components {
            out.push_str(&format!("component = {};\n", self.ring.format_ideal(c)));
        }
        out.push_str(&format!("I = {};\n", self.ring.format_ideal(&self.ideal_i)));
        if let Some(q) = &self.ideal_q {
            out.push_str(&format!("Q = {};\n", self.ring.format_ideal(q)));
        }
        if let Some(j) = &self.ideal_j {
            out.push_str(&format!("J = {};\n", self.ring.format_ideal(j)));
        }
        if let Some(n) = self.options.n_max {
            out.push_str(&format!("n_max = {n};\n"));
        }
        if let Some(k) = self.options.k_max {
            out.push_str(&format!("k_max = {k};\n"));
        }
        if let Some(w) = self.options.window {
            out.push_str(&format!("window = {w};\n"));
        }
        out
    }

    pub fn from_parts(module: &ModulePresentation, ideal_i: MonomialIdeal) -> Self {
        Self {
            ring: module.ambient().clone(),
            components: module.components().to_vec(),
            ideal_i,
            ideal_q: None,
            ideal_j: None,
            options: InstanceOptions::default(),
        }
    }
}

impl fmt::Display for InstanceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, InstanceError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                column += 1;
            }
        } else if c.is_ascii_digit() {
            let mut value: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(digit) = d.to_digit(10) else { break };
                value = value.checked_mul(10).and_then(|v| v.checked_add(u64::from(digit))).ok_or_else(|| {
                    InstanceError::Semantic {
                        line: start_line,
                        column: start_col,
                        message: "integer literal too large".into(),
                    }
                })?;
                chars.next();
                column += 1;
            }
            tokens.push(Token { tok: Tok::Int(value), line: start_line, column: start_col });
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                column += 1;
            }
            tokens.push(Token { tok: Tok::Ident(name), line: start_line, column: start_col });
        } else if "(),;=*^".contains(c) {
            chars.next();
            column += 1;
            tokens.push(Token { tok: Tok::Sym(c), line: start_line, column: start_col });
        } else {
            return Err(InstanceError::Syntax {
                line,
                column,
                expected: "a name, integer, or one of ( ) , ; = * ^".into(),
                found: format!("`{c}`"),
            });
        }
    }
    tokens.push(Token { tok: Tok::Eof, line, column });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> InstanceError {
        let t = self.peek();
        InstanceError::Syntax { line: t.line, column: t.column, expected: expected.into(), found: t.tok.to_string() }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, InstanceError> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), InstanceError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(u64, Token), InstanceError> {
        match self.peek().tok {
            Tok::Int(n) => Ok((n, self.next())),
            _ => Err(self.unexpected(what)),
        }
    }

    fn monomial(&mut self, ring: &AmbientRing) -> Result<Monomial, InstanceError> {
        let mut exponents = vec![0u32; ring.arity()];
        loop {
            match self.peek().tok.clone() {
                Tok::Int(1) => {
                    self.next();
                }
                Tok::Ident(name) => {
                    let at = self.next();
                    let index = ring.index_of(&name).ok_or_else(|| InstanceError::Semantic {
                        line: at.line,
                        column: at.column,
                        message: format!("unknown variable `{name}`"),
                    })?;
                    let mut e = 1u64;
                    if self.peek().tok == Tok::Sym('^') {
                        self.next();
                        e = self.expect_int("an exponent")?.0;
                    }
                    let total = u64::from(exponents[index]) + e;
                    exponents[index] = u32::try_from(total).map_err(|_| InstanceError::Semantic {
                        line: at.line,
                        column: at.column,
                        message: format!("exponent of `{name}` exceeds {}", u32::MAX),
                    })?;
                }
                _ => return Err(self.unexpected("a variable name or `1`")),
            }
            if self.peek().tok == Tok::Sym('*') {
                self.next();
            } else {
                return Ok(Monomial::new(exponents));
            }
        }
    }

    fn ideal(&mut self, ring: &AmbientRing) -> Result<MonomialIdeal, InstanceError> {
        self.expect_sym('(')?;
        if self.peek().tok == Tok::Int(0) {
            self.next();
            self.expect_sym(')')?;
            return Ok(MonomialIdeal::zero(ring.arity()));
        }
        let mut gens = vec![self.monomial(ring)?];
        loop {
            match self.peek().tok {
                Tok::Sym(',') => {
                    self.next();
                    gens.push(self.monomial(ring)?);
                }
                Tok::Sym(')') => {
                    self.next();
                    break;
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
        Ok(MonomialIdeal::minimalize(ring.arity(), gens).expect("monomials built in this ring"))
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument, InstanceError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    match &p.peek().tok {
        Tok::Ident(k) if k == "vars" => {
            p.next();
        }
        _ => return Err(p.unexpected("`vars`")),
    }
    let mut names: Vec<String> = Vec::new();
    loop {
        let (name, at) = p.expect_ident("a variable name")?;
        if names.contains(&name) {
            return Err(InstanceError::Semantic {
                line: at.line,
                column: at.column,
                message: format!("duplicate variable `{name}`"),
            });
        }
        names.push(name);
        match p.peek().tok {
            Tok::Sym(',') => {
                p.next();
            }
            Tok::Sym(';') => {
                p.next();
                break;
            }
            _ => return Err(p.unexpected("`,` or `;`")),
        }
    }
    let ring = AmbientRing::new(names).map_err(|e| InstanceError::Invalid(e.to_string()))?;

    let mut components = Vec::new();
    let mut ideal_i: Option<MonomialIdeal> = None;
    let mut ideal_q = None;
    let mut ideal_j = None;
    let mut options = InstanceOptions::default();
    while p.peek().tok != Tok::Eof {
        let (key, at) = p.expect_ident("`component`, `I`, `Q`, `J`, `n_max`, `k_max` or `window`")?;
        p.expect_sym('=')?;
        let duplicate =
            || InstanceError::Semantic { line: at.line, column: at.column, message: format!("`{key}` given twice") };
        match key.as_str() {
            "component" => {
                let ideal = p.ideal(&ring)?;
                if ideal.is_unit() {
                    return Err(InstanceError::Semantic {
                        line: at.line,
                        column: at.column,
                        message: "unit-ideal component (the zero module) is not allowed".into(),
                    });
                }
                components.push(ideal);
            }
            "I" | "Q" | "J" => {
                let ideal = p.ideal(&ring)?;
                let slot = match key.as_str() {
                    "I" => &mut ideal_i,
                    "Q" => &mut ideal_q,
                    _ => &mut ideal_j,
                };
                if slot.replace(ideal).is_some() {
                    return Err(duplicate());
                }
            }
            "n_max" | "k_max" | "window" => {
                let (value, vt) = p.expect_int("an integer")?;
                let too_big = || InstanceError::Semantic {
                    line: vt.line,
                    column: vt.column,
                    message: format!("`{key}` value {value} is too large"),
                };
                let previous = match key.as_str() {
                    "n_max" => options.n_max.replace(u32::try_from(value).map_err(|_| too_big())?).is_some(),
                    "k_max" => options.k_max.replace(u32::try_from(value).map_err(|_| too_big())?).is_some(),
                    _ => options.window.replace(usize::try_from(value).map_err(|_| too_big())?).is_some(),
                };
                if previous {
                    return Err(duplicate());
                }
            }
            _ => {
                return Err(InstanceError::Syntax {
                    line: at.line,
                    column: at.column,
                    expected: "`component`, `I`, `Q`, `J`, `n_max`, `k_max` or `window`".into(),
                    found: format!("`{key}`"),
                })
            }
        }
        p.expect_sym(';')?;
    }

    if components.is_empty() {
        return Err(InstanceError::Invalid("at least one `component` is required".into()));
    }
    let ideal_i = ideal_i.ok_or_else(|| InstanceError::Invalid("the ideal `I` is required".into()))?;
    if ideal_i.is_unit() {
        return Err(InstanceError::Invalid("`I` is the unit ideal, not m-primary".into()));
    }
    if let Some(v) = ideal_i.missing_pure_power() {
        return Err(InstanceError::Invalid(format!(
            "`I` is not m-primary: it contains no pure power of `{}`",
            ring.names()[v]
        )));
    }
    Ok(InstanceDocument { ring, components, ideal_i, ideal_q, ideal_j, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_instance() {
        let doc = parse_instance("vars x; component = (0); I = (x);").unwrap();
        assert_eq!(doc.components, vec![MonomialIdeal::zero(1)]);
        assert_eq!(doc.ideal_i, MonomialIdeal::maximal(1));
        assert_eq!(doc.module().dimension(), 1);
    }

    #[test]
    fn staircase_instance() {
        let doc = parse_instance("vars x, y; component = (x*y, y^2); I = (x, y);").unwrap();
        assert_eq!(doc.module().dimension(), 1);
        assert_eq!(doc.ring.format_ideal(&doc.components[0]), "(x*y, y^2)");
    }

    #[test]
    fn trailing_comma_is_a_syntax_error() {
        let err = parse_instance("vars x;\ncomponent = (0);\nI = (x, );").unwrap_err();
        match err {
            InstanceError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 9)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(
            parse_instance("vars x, x; component = (0); I = (x);"),
            Err(InstanceError::Semantic { column: 9, .. })
        ));
        assert!(matches!(parse_instance("vars x; component = (y); I = (x);"), Err(InstanceError::Semantic { .. })));
        assert!(matches!(parse_instance("vars x; component = (1); I = (x);"), Err(InstanceError::Semantic { .. })));
        let err = parse_instance("vars x, y; component = (0); I = (x^2, x*y);").unwrap_err();
        assert!(err.to_string().contains("pure power of `y`"), "{err}");
        assert!(matches!(parse_instance("vars x; I = (x);"), Err(InstanceError::Invalid(_))));
        assert!(matches!(
            parse_instance("vars x; component = (0); I = (x); I = (x);"),
            Err(InstanceError::Semantic { .. })
        ));
    }

    #[test]
    fn options_and_comments() {
        let text = "# demo\nvars a, b;\ncomponent = (a^2*b); component = (0);\nI = (a, b^3);\nQ = (a);\nJ = (a*b, 1);\nn_max = 12; k_max = 5; window = 3;\n";
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.options, InstanceOptions { n_max: Some(12), k_max: Some(5), window: Some(3) });
        assert!(doc.ideal_j.as_ref().unwrap().is_unit());
        assert_eq!(doc.components.len(), 2);
        let again = parse_instance(&doc.to_canonical_string()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn repeated_factors_accumulate() {
        let doc = parse_instance("vars x; component = (x*x^2); I = (x);").unwrap();
        assert_eq!(doc.components[0], MonomialIdeal::from_exponents(1, &[&[3]]).unwrap());
    }
}
