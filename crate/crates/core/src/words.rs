//! Exact word calculus in `RC_K`.
//!
//! Every generator is an involution, so a word is a plain sequence of vertex
//! labels and its inverse is its reverse. Two words are equal in `RC_K` iff
//! their [`normal_form`]s coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scomplex::{SimplicialComplex, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse {0:?} as a word")]
    Syntax(String),
    #[error("letter {letter} out of range 1..={m}")]
    LetterOutOfRange { letter: Vertex, m: u32 },
    #[error("a commutator needs at least two entries")]
    ShortCommutator,
}

/// A word in the generators `g_1..g_m`; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(Vec<Vertex>);

impl GroupWord {
    pub fn new(letters: Vec<Vertex>) -> Self {
        GroupWord(letters)
    }

    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letter(v: Vertex) -> Self {
        GroupWord(vec![v])
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The inverse word (the reverse, since every letter is an involution).
    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    /// Literal concatenation, without reduction.
    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    /// Check every letter lies in `1..=m`.
    pub fn check_range(&self, m: u32) -> Result<(), WordError> {
        match self.0.iter().find(|&&x| x == 0 || x > m) {
            Some(&letter) => Err(WordError::LetterOutOfRange { letter, m }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Index sequence `(i_1, ..., i_k)`, `k >= 2`, naming the left-nested
/// commutator `(...((g_{i_1}, g_{i_2}), g_{i_3}), ..., g_{i_k})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct CommutatorTuple(Vec<Vertex>);

impl CommutatorTuple {
    pub fn new(indices: Vec<Vertex>) -> Result<Self, WordError> {
        if indices.len() < 2 {
            return Err(WordError::ShortCommutator);
        }
        if let Some(&letter) = indices.iter().find(|&&x| x == 0) {
            return Err(WordError::LetterOutOfRange { letter, m: 0 });
        }
        Ok(CommutatorTuple(indices))
    }

    pub fn indices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<Vertex>> for CommutatorTuple {
    type Error = WordError;

    fn try_from(v: Vec<Vertex>) -> Result<Self, WordError> {
        CommutatorTuple::new(v)
    }
}

impl From<CommutatorTuple> for Vec<Vertex> {
    fn from(t: CommutatorTuple) -> Self {
        t.0
    }
}

impl fmt::Debug for CommutatorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CommutatorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "c({})", s.join(","))
    }
}

impl FromStr for CommutatorTuple {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let t = s.trim();
        let inner = t
            .strip_prefix("c(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| WordError::Syntax(s.to_string()))?;
        CommutatorTuple::new(parse_indices(inner).ok_or_else(|| WordError::Syntax(s.to_string()))?)
    }
}

fn parse_indices(s: &str) -> Option<Vec<Vertex>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect()
}

/// Parse a word literal: indices separated by commas or spaces (`1 2 1 2`),
/// or a commutator literal `c(1,2,3)`, which is expanded but not reduced.
pub fn parse_word(s: &str) -> Result<GroupWord, WordError> {
    let t = s.trim();
    if t.starts_with("c(") {
        return Ok(expand_commutator(&t.parse()?));
    }
    let letters = parse_indices(t).ok_or_else(|| WordError::Syntax(s.to_string()))?;
    if letters.contains(&0) {
        return Err(WordError::LetterOutOfRange { letter: 0, m: 0 });
    }
    Ok(GroupWord(letters))
}

fn commute(k: &SimplicialComplex, a: Vertex, b: Vertex) -> bool {
    a == b || k.is_edge(a, b)
}

/// Canonical representative of `w` in `RC_K`: reduced, and ShortLex-least
/// among the words reachable from it by swapping adjacent commuting letters.
pub fn normal_form(k: &SimplicialComplex, w: &GroupWord) -> GroupWord {
    GroupWord(lex_least(k, reduce(k, &w.0)))
}

/// Cancel every pair `x ... x` whose intermediate letters all commute with `x`.
/// Appending one letter to a reduced word either keeps it reduced or cancels
/// exactly one such pair, so a single left-to-right pass suffices.
fn reduce(k: &SimplicialComplex, letters: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(letters.len());
    for &x in letters {
        let mut hit = None;
        for idx in (0..out.len()).rev() {
            let y = out[idx];
            if y == x {
                hit = Some(idx);
                break;
            }
            if !k.is_edge(x, y) {
                break;
            }
        }
        match hit {
            Some(idx) => {
                out.remove(idx);
            }
            None => out.push(x),
        }
    }
    out
}

/// Lexicographically least rearrangement under commuting transpositions:
/// repeatedly move the smallest letter that can reach the front.
fn lex_least(k: &SimplicialComplex, mut rest: Vec<Vertex>) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let x = rest[p];
            if best.is_some_and(|b| rest[b] <= x) {
                continue;
            }
            if rest[..p].iter().all(|&y| y != x && commute(k, x, y)) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter can always move to the front");
        out.push(rest.remove(p));
    }
    out
}

pub fn multiply(k: &SimplicialComplex, u: &GroupWord, v: &GroupWord) -> GroupWord {
    normal_form(k, &u.concat(v))
}

pub fn is_identity(k: &SimplicialComplex, w: &GroupWord) -> bool {
    reduce(k, &w.0).is_empty()
}

pub fn equal_in_group(k: &SimplicialComplex, u: &GroupWord, v: &GroupWord) -> bool {
    is_identity(k, &u.inverse().concat(v))
}

/// `(a, b) = a⁻¹ b⁻¹ a b`, unreduced.
pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
    a.inverse().concat(&b.inverse()).concat(a).concat(b)
}

/// Left-nested commutator `(...((a_1, a_2), a_3), ..., a_k)`, unreduced.
pub fn nested_commutator(parts: &[GroupWord]) -> GroupWord {
    let mut it = parts.iter();
    let mut acc = it.next().cloned().unwrap_or_default();
    for p in it {
        acc = commutator(&acc, p);
    }
    acc
}

/// `a^b = b⁻¹ a b`, unreduced.
pub fn conjugate(a: &GroupWord, b: &GroupWord) -> GroupWord {
    b.inverse().concat(a).concat(b)
}

/// Literal word of the simple nested commutator named by `t`.
pub fn expand_commutator(t: &CommutatorTuple) -> GroupWord {
    let parts: Vec<GroupWord> = t.indices().iter().map(|&i| GroupWord::letter(i)).collect();
    nested_commutator(&parts)
}

/// Check the three Hall–Witt identities for `a, b, c` in `RC_K`:
///
/// * `(a, bc) = (a, c)(a, b)(a, b, c)`
/// * `(ab, c) = (a, c)(a, c, b)(b, c)`
/// * `(a,b,c)(b,c,a)(c,a,b) = (b,a)(c,a)(c,b)^a (a,b)(a,c)^b (b,c)^a (a,c)(c,a)^b`
///
/// These hold in every group, so `false` means the word calculus is broken.
pub fn verify_hall_witt(k: &SimplicialComplex, a: &GroupWord, b: &GroupWord, c: &GroupWord) -> bool {
    let comm = commutator;
    let comm3 = |x: &GroupWord, y: &GroupWord, z: &GroupWord| comm(&comm(x, y), z);
    let cat = |ws: &[GroupWord]| ws.iter().fold(GroupWord::identity(), |acc, w| acc.concat(w));

    let first = equal_in_group(
        k,
        &comm(a, &b.concat(c)),
        &cat(&[comm(a, c), comm(a, b), comm3(a, b, c)]),
    );
    let second = equal_in_group(
        k,
        &comm(&a.concat(b), c),
        &cat(&[comm(a, c), comm3(a, c, b), comm(b, c)]),
    );
    let third = equal_in_group(
        k,
        &cat(&[comm3(a, b, c), comm3(b, c, a), comm3(c, a, b)]),
        &cat(&[
            comm(b, a),
            comm(c, a),
            conjugate(&comm(c, b), a),
            comm(a, b),
            conjugate(&comm(a, c), b),
            conjugate(&comm(b, c), a),
            comm(a, c),
            conjugate(&comm(c, a), b),
        ]),
    );
    first && second && third
}

/// An element of the infinite dihedral group `Z_2 * Z_2 = <g_1, g_2>`,
/// written as `(g_1 g_2)^power` (a rotation) or `(g_1 g_2)^power g_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralProfile {
    pub is_rotation: bool,
    pub power: i64,
}

/// Evaluate a word over `{1, 2}` in the infinite dihedral group, with
/// `g_1 g_2` as the positive rotation.
pub fn dihedral_profile(w: &GroupWord) -> Result<DihedralProfile, WordError> {
    w.check_range(2)?;
    let (mut power, mut reflected) = (0i64, false);
    for &x in w.letters() {
        match (x, reflected) {
            (1, _) => reflected = !reflected,
            // r^n g_1 * g_1 r = r^{n+1}
            (_, true) => {
                power += 1;
                reflected = false;
            }
            // r^n * g_1 r = r^n r^{-1} g_1
            (_, false) => {
                power -= 1;
                reflected = true;
            }
        }
    }
    Ok(DihedralProfile { is_rotation: !reflected, power })
}
