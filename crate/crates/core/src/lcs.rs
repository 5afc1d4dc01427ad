//! Combinatorial descriptions of the commutator subgroup and of the first
//! three lower central series quotients `L^k = γ_k / γ_{k+1}` of `RC_K`.
//!
//! Commutators nest to the left throughout.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::Strategy;
use crate::scomplex::{SimplicialComplex, Vertex, VertexSet};
use crate::words::CommutatorTuple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LcsError {
    #[error("basis is only known in degrees 1, 2 and 3 (asked for {0})")]
    DegreeOutOfRange(u32),
}

/// One generator `(g_i, g_j, g_{k_1}, ..., g_{k_{l-2}})` of the commutator
/// subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorDescriptor {
    pub tuple: CommutatorTuple,
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tuple)
    }
}

/// Does `(i, j, ks...)` satisfy the generator conditions: `i < j > k_1 > k_2 > ...`,
/// no `k_s = i`, and `i` the smallest vertex of its component of
/// `K_{{i, j, k_1, ...}}`, that component not containing `j`.
pub fn is_gscox_tuple(k: &SimplicialComplex, indices: &[Vertex]) -> bool {
    let [i, j, ks @ ..] = indices else {
        return false;
    };
    let (i, j) = (*i, *j);
    if i >= j || !k.ground().contains(i) || !k.ground().contains(j) {
        return false;
    }
    let mut prev = j;
    for &x in ks {
        if x >= prev || x == i || !k.ground().contains(x) {
            return false;
        }
        prev = x;
    }
    let set: VertexSet = indices.iter().copied().collect();
    smallest_away_from(k, i, j, set)
}

fn smallest_away_from(k: &SimplicialComplex, i: Vertex, j: Vertex, set: VertexSet) -> bool {
    let comp = k.component_of(i, set);
    comp.min() == Some(i) && !comp.contains(j)
}

/// The minimal generating set of `RC_K'`, ordered by length, then
/// lexicographically. Its size is `Σ_J rank H̃_0(K_J)`.
pub fn gscox_generators(k: &SimplicialComplex) -> Vec<GeneratorDescriptor> {
    gscox_generators_with(k, Strategy::default())
}

pub fn gscox_generators_with(k: &SimplicialComplex, strategy: Strategy) -> Vec<GeneratorDescriptor> {
    let ground = k.ground();
    let tops: Vec<Vertex> = ground.iter().collect();
    let per_top: Vec<Vec<Vec<Vertex>>> = strategy.map_slice(&tops, |&j| {
        let below = VertexSet::from_bits(ground.bits() & ((1u64 << (j - 1)) - 1));
        let mut found = Vec::new();
        for i in below.iter() {
            let pool = below.difference(VertexSet::singleton(i)).bits();
            // every subset of the pool is a candidate {k_1 > k_2 > ...}
            let mut sub = pool;
            loop {
                let ks = VertexSet::from_bits(sub);
                let set = ks.with(i).with(j);
                if smallest_away_from(k, i, j, set) {
                    let mut t = vec![i, j];
                    t.extend(ks.iter().rev());
                    found.push(t);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & pool;
            }
        }
        found
    });
    let mut all: Vec<Vec<Vertex>> = per_top.into_iter().flatten().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|t| GeneratorDescriptor { tuple: CommutatorTuple::new(t).expect("length >= 2") })
        .collect()
}

/// A basis element of `L^1`, `L^2` or `L^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// `ḡ_i` in `L^1`.
    Generator(Vertex),
    /// `[ḡ_i, ḡ_j]`, `i < j`, `{i, j} ∉ K`.
    Pair(Vertex, Vertex),
    /// `[ḡ_i, ḡ_j, ḡ_j]`, `i < j`, `{i, j} ∉ K`.
    Square(Vertex, Vertex),
    /// `[ḡ_i, ḡ_j, ḡ_k]`, `i < j > k`, `i ≠ k`, `i` smallest in its component
    /// of `K_{{i,j,k}}`, which avoids `j`.
    Triple(Vertex, Vertex, Vertex),
}

impl BasisElement {
    pub fn indices(&self) -> Vec<Vertex> {
        match *self {
            BasisElement::Generator(i) => vec![i],
            BasisElement::Pair(i, j) => vec![i, j],
            BasisElement::Square(i, j) => vec![i, j, j],
            BasisElement::Triple(i, j, k) => vec![i, j, k],
        }
    }

    pub fn degree(&self) -> usize {
        self.indices().len()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BasisElement::Generator(_) => "generator",
            BasisElement::Pair(..) => "pair",
            BasisElement::Square(..) => "square",
            BasisElement::Triple(..) => "triple",
        }
    }

    /// The commutator tuple, for elements of degree at least 2.
    pub fn tuple(&self) -> Option<CommutatorTuple> {
        CommutatorTuple::new(self.indices()).ok()
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let BasisElement::Generator(i) = self {
            return write!(f, "g{i}");
        }
        let parts: Vec<String> = self.indices().iter().map(|x| format!("g{x}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for BasisElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            indices: Vec<Vertex>,
        }
        Repr { kind: self.kind(), indices: self.indices() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasisElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            kind: String,
            indices: Vec<Vertex>,
        }
        let r = Repr::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("bad basis element {:?} {:?}", r.kind, r.indices));
        Ok(match (r.kind.as_str(), r.indices.as_slice()) {
            ("generator", &[i]) => BasisElement::Generator(i),
            ("pair", &[i, j]) => BasisElement::Pair(i, j),
            ("square", &[i, j, j2]) if j == j2 => BasisElement::Square(i, j),
            ("triple", &[i, j, k]) => BasisElement::Triple(i, j, k),
            _ => return Err(bad()),
        })
    }
}

/// Basis of `L^degree(RC_K)` for `degree` in 1..=3.
///
/// Degree 3 lists the square-type elements (by `j` ascending, then `i`
/// descending) followed by the triple-type elements (by `j`, `i`, `k`
/// ascending); this reproduces the published three-vertex listings.
pub fn lrck_basis(k: &SimplicialComplex, degree: u32) -> Result<Vec<BasisElement>, LcsError> {
    let ground = k.ground();
    match degree {
        1 => Ok(ground.iter().map(BasisElement::Generator).collect()),
        2 => Ok(k.missing_edges().into_iter().map(|(i, j)| BasisElement::Pair(i, j)).collect()),
        3 => {
            let mut squares: Vec<(Vertex, Vertex)> = k.missing_edges();
            squares.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
            let mut out: Vec<BasisElement> =
                squares.into_iter().map(|(i, j)| BasisElement::Square(i, j)).collect();
            for j in ground.iter() {
                for i in ground.iter().filter(|&i| i < j) {
                    for kk in ground.iter().filter(|&x| x < j && x != i) {
                        let set = VertexSet::singleton(i).with(j).with(kk);
                        if smallest_away_from(k, i, j, set) {
                            out.push(BasisElement::Triple(i, j, kk));
                        }
                    }
                }
            }
            Ok(out)
        }
        d => Err(LcsError::DegreeOutOfRange(d)),
    }
}

/// Ranks of `L^1`, `L^2`, `L^3` (each an elementary abelian 2-group).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRanks {
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
}

impl GradedRanks {
    pub fn as_array(&self) -> [u64; 3] {
        [self.r1, self.r2, self.r3]
    }
}

impl fmt::Display for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r1={} r2={} r3={}", self.r1, self.r2, self.r3)
    }
}

pub fn lcs_ranks(k: &SimplicialComplex) -> GradedRanks {
    let count = |d| lrck_basis(k, d).expect("degree in range").len() as u64;
    GradedRanks { r1: count(1), r2: count(2), r3: count(3) }
}

/// Closed forms for `m` disjoint points (`RC_K` the free product of `m` copies
/// of `Z_2`): `(m, C(m,2), C(m,2) + 2 C(m,3))`.
pub fn free_case_ranks(m: u64) -> GradedRanks {
    let c2 = m * m.saturating_sub(1) / 2;
    let c3 = m * m.saturating_sub(1) * m.saturating_sub(2) / 6;
    GradedRanks { r1: m, r2: c2, r3: c2 + 2 * c3 }
}
