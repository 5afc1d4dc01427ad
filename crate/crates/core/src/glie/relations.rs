//! Parsing homogeneous Lie elements written as sums of nested bracket lists.
//!
//! A bracket list `[e1, e2, ..., ek]` is the left-normed bracket
//! `[[[e1, e2], ...], ek]`; each entry is a generator index or a nested list.
//! A relation is a `+`-separated sum of such terms, one relation per line.

use thiserror::Error;

use super::lyndon::{LieElement, LieEngine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: generator {index} is outside 1..={m}")]
    IndexOutOfRange { line: usize, index: u64, m: u32 },
    #[error("line {line}: terms of degrees {first} and {other} in one relation")]
    Inhomogeneous { line: usize, first: usize, other: usize },
}

/// A homogeneous relation; `line` is its 1-based source line (0 if built in code).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub line: usize,
    pub element: LieElement,
}

impl Relation {
    pub fn degree(&self) -> usize {
        self.element.degree()
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Gen(u64),
    List(Vec<Expr>),
}

impl Expr {
    fn degree(&self) -> usize {
        match self {
            Expr::Gen(_) => 1,
            Expr::List(xs) => xs.iter().map(Expr::degree).sum(),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RelationError> {
        Err(RelationError::Syntax { line: self.line, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, RelationError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            items.push(self.expr()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected ',' or ']'"),
                    }
                }
                Ok(Expr::List(items))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match text.parse() {
                    Ok(n) => Ok(Expr::Gen(n)),
                    Err(_) => self.err(format!("index {text} too large")),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of line"),
        }
    }

    fn sum(&mut self) -> Result<Vec<Expr>, RelationError> {
        let mut terms = vec![self.expr()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.expr()?);
                }
                None => return Ok(terms),
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
        }
    }
}

fn evaluate(e: &Expr, m: u32, line: usize, engine: &mut LieEngine) -> Result<LieElement, RelationError> {
    match e {
        Expr::Gen(i) => {
            if *i == 0 || *i > m as u64 {
                return Err(RelationError::IndexOutOfRange { line, index: *i, m });
            }
            Ok(LieElement::generator(*i as u8))
        }
        Expr::List(items) => {
            let mut acc = evaluate(&items[0], m, line, engine)?;
            for x in &items[1..] {
                let y = evaluate(x, m, line, engine)?;
                acc = engine.bracket(&acc, &y);
            }
            Ok(acc)
        }
    }
}

/// Parse one relation, e.g. `[1,2,1] + [1,2,2]`.
pub fn parse_relation(text: &str, m: u32, line: usize) -> Result<Relation, RelationError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, line };
    let terms = p.sum()?;
    let first = terms[0].degree();
    if let Some(t) = terms.iter().find(|t| t.degree() != first) {
        return Err(RelationError::Inhomogeneous { line, first, other: t.degree() });
    }
    let mut engine = LieEngine::new();
    let mut element = LieElement::zero(first);
    for t in &terms {
        element = element.add(&evaluate(t, m, line, &mut engine)?);
    }
    Ok(Relation { line, element })
}

/// Parse a relations file: one relation per line, `#` starts a comment.
pub fn parse_relations(text: &str, m: u32) -> Result<Vec<Relation>, RelationError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(parse_relation(body, m, n + 1)?);
    }
    Ok(out)
}

/// Relations describing the associated Lie algebra of the group on two
/// disjoint points, with `a = [μ1, μ2]`: `[a, μ1] + [a, μ2]` in degree 3 and
/// `[a, μ1, ..., μ1, a]` with `2k + 1` copies of `μ1`, in degrees `2k + 5 <= max_degree`.
pub fn rc2point_relations(max_degree: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    if max_degree >= 3 {
        out.push(parse_relation("[1,2,1] + [1,2,2]", 2, 0).expect("fixed relation"));
    }
    let mut k = 0;
    while 2 * k + 5 <= max_degree {
        let ones = vec!["1"; 2 * k + 1].join(",");
        let text = format!("[[1,2],{ones},[1,2]]");
        out.push(parse_relation(&text, 2, 0).expect("fixed relation"));
        k += 1;
    }
    out
}
