//! Abstract simplicial complexes on `[m] = {1, ..., m}`.
//!
//! A complex is stored by its maximal faces (facets) together with the
//! adjacency of its 1-skeleton. Faces of a given size are materialized only
//! when asked for. Vertices are 1-based everywhere and full subcomplexes keep
//! the ambient labels, recording the restricting set as their ground set.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vertex label, `1..=m`.
pub type Vertex = u32;

/// Largest supported vertex count (vertex sets are packed into a `u64`).
pub const MAX_VERTICES: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: i64, m: u32 },
    #[error("line {line}: vertex {vertex} repeated within a face")]
    DuplicateVertex { line: usize, vertex: Vertex },
    #[error("vertex count {0} unsupported (must be 1..={MAX_VERTICES})")]
    BadVertexCount(i64),
    #[error("invalid JSON complex: {0}")]
    Json(String),
}

/// A subset of `{1..m}` packed as a bitmask (bit `v - 1` for vertex `v`).
///
/// Ordering is lexicographic on the ascending vertex lists, so `{1,3} < {2}`
/// and `{1} < {1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: u32) -> Self {
        debug_assert!(m <= MAX_VERTICES);
        if m == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: Vertex) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= Self::singleton(v).0;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !Self::singleton(v).0;
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Smallest member.
    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Largest member.
    pub fn max(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl DoubleEndedIterator for VertexIter {
    fn next_back(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = 63 - self.0.leading_zeros();
        self.0 &= !(1u64 << v);
        Some(v + 1)
    }
}

impl ExactSizeIterator for VertexIter {}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Below `low` both lists agree. Whoever owns `low` has it as its next
        // element; the other list is smaller only if it has run out.
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, v) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list = Vec::<Vertex>::deserialize(d)?;
        if let Some(&bad) = list.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(list.into_iter().collect())
    }
}

/// Disjoint nonempty blocks covering a ground set, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: Vertex) -> Option<VertexSet> {
        self.blocks.iter().copied().find(|b| b.contains(v))
    }
}

/// A simplicial complex on `[m]`, possibly restricted to a ground set `J`.
///
/// Always contains the empty face and every singleton of its ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: u32,
    ground: VertexSet,
    facets: Vec<VertexSet>,
    adjacency: Vec<u64>,
}

impl SimplicialComplex {
    /// Complex on `[m]` generated by `faces` (downward closure plus all singletons).
    pub fn from_faces<I, F>(m: u32, faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        check_vertex_count(m as i64)?;
        let mut sets = Vec::new();
        for (n, face) in faces.into_iter().enumerate() {
            let mut s = VertexSet::EMPTY;
            for v in face {
                if v == 0 || v > m {
                    return Err(ComplexError::VertexOutOfRange { vertex: v as i64, m });
                }
                if s.contains(v) {
                    return Err(ComplexError::DuplicateVertex { line: n + 1, vertex: v });
                }
                s.insert(v);
            }
            sets.push(s);
        }
        Ok(Self::from_sets(m, VertexSet::full(m), sets))
    }

    /// Build from already-validated vertex sets, all contained in `ground`.
    pub(crate) fn from_sets(m: u32, ground: VertexSet, sets: Vec<VertexSet>) -> Self {
        let mut candidates: Vec<VertexSet> = sets
            .into_iter()
            .map(|s| s.intersection(ground))
            .chain(ground.iter().map(VertexSet::singleton))
            .filter(|s| !s.is_empty())
            .collect();
        // Larger sets first so that every maximal set is kept before its subsets.
        candidates.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        candidates.dedup();
        let mut facets: Vec<VertexSet> = Vec::new();
        for c in candidates {
            if !facets.iter().any(|f| c.is_subset(*f)) {
                facets.push(c);
            }
        }
        facets.sort();
        let mut adjacency = vec![0u64; m as usize];
        for f in &facets {
            for v in f.iter() {
                adjacency[(v - 1) as usize] |= f.difference(VertexSet::singleton(v)).bits();
            }
        }
        SimplicialComplex { m, ground, facets, adjacency }
    }

    /// `m` isolated points.
    pub fn discrete(m: u32) -> Self {
        Self::from_sets(m, VertexSet::full(m), Vec::new())
    }

    /// The full simplex on `[m]`.
    pub fn simplex(m: u32) -> Self {
        Self::from_sets(m, VertexSet::full(m), vec![VertexSet::full(m)])
    }

    /// The 1-dimensional complex with the given edges.
    pub fn from_edges(m: u32, edges: &[(Vertex, Vertex)]) -> Result<Self, ComplexError> {
        Self::from_faces(m, edges.iter().map(|&(a, b)| [a, b]))
    }

    /// The same complex with `face` (and its subsets) added.
    pub fn with_face(&self, face: VertexSet) -> Self {
        let mut sets = self.facets.clone();
        sets.push(face.intersection(self.ground));
        Self::from_sets(self.m, self.ground, sets)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Vertex set the complex lives on (`[m]` unless it is a full subcomplex).
    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    /// Maximal faces in lexicographic order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn dimension(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    pub fn has_face(&self, s: VertexSet) -> bool {
        s.is_empty() || self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn is_edge(&self, i: Vertex, j: Vertex) -> bool {
        i != j && self.neighbours(i).contains(j)
    }

    /// Neighbours of `v` in the 1-skeleton.
    pub fn neighbours(&self, v: Vertex) -> VertexSet {
        if v == 0 || v > self.m {
            return VertexSet::EMPTY;
        }
        VertexSet(self.adjacency[(v - 1) as usize])
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in self.ground.iter() {
            for j in self.neighbours(i).iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// All faces with exactly `size` vertices, in lexicographic order.
    /// `size == 0` yields the empty face alone.
    pub fn faces_of_size(&self, size: usize) -> Vec<VertexSet> {
        if size == 0 {
            return vec![VertexSet::EMPTY];
        }
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                subsets_of_size(*f, size, &mut |s| {
                    out.insert(s);
                });
            }
        }
        out.into_iter().collect()
    }

    /// Face counts `f_{-1}, f_0, f_1, ...` (index = face size).
    pub fn f_vector(&self) -> Vec<usize> {
        let top = (self.dimension() + 1).max(0) as usize;
        (0..=top).map(|s| self.faces_of_size(s).len()).collect()
    }

    /// The full subcomplex `K_J = {I in K : I ⊆ J}`, keeping ambient labels.
    pub fn full_subcomplex(&self, j: VertexSet) -> Result<Self, ComplexError> {
        self.check_subset(j)?;
        let ground = self.ground.intersection(j);
        Ok(Self::from_sets(self.m, ground, self.facets.clone()))
    }

    /// Connected components of the 1-skeleton of `K_J`, ordered by smallest member.
    pub fn connected_components(&self, j: VertexSet) -> Result<Partition, ComplexError> {
        self.check_subset(j)?;
        Ok(Partition { blocks: self.components_in(j.intersection(self.ground)) })
    }

    pub(crate) fn components_in(&self, j: VertexSet) -> Vec<VertexSet> {
        let mut blocks = Vec::new();
        let mut rest = j.bits();
        while rest != 0 {
            let block = self.component_of(rest.trailing_zeros() + 1, VertexSet(rest));
            rest &= !block.bits();
            blocks.push(block);
        }
        blocks
    }

    /// Component of `v` in the 1-skeleton restricted to `j` (which must contain `v`).
    pub(crate) fn component_of(&self, v: Vertex, j: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v).bits();
        let mut frontier = seen;
        while frontier != 0 {
            let u = frontier.trailing_zeros();
            frontier &= frontier - 1;
            let new = self.adjacency[u as usize] & j.bits() & !seen;
            seen |= new;
            frontier |= new;
        }
        VertexSet(seen)
    }

    /// Number of connected components of `K_J` (no range check).
    pub(crate) fn component_count(&self, j: VertexSet) -> usize {
        let mut rest = j.intersection(self.ground).bits();
        let mut count = 0;
        while rest != 0 {
            let block = self.component_of(rest.trailing_zeros() + 1, VertexSet(rest));
            rest &= !block.bits();
            count += 1;
        }
        count
    }

    /// All cliques of the 1-skeleton, including the empty one.
    pub fn cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.extend_cliques(VertexSet::EMPTY, self.ground, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    fn extend_cliques(&self, clique: VertexSet, candidates: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(clique);
        for v in candidates.iter() {
            let above = VertexSet(candidates.bits() & !((1u64 << v) - 1));
            self.extend_cliques(clique.with(v), above.intersection(self.neighbours(v)), out);
        }
    }

    /// Every set of pairwise adjacent vertices spans a face.
    pub fn is_flag(&self) -> bool {
        self.cliques().into_iter().all(|c| self.has_face(c))
    }

    /// Pairs `(i, j)`, `i < j`, of ground vertices that do not span an edge.
    pub fn missing_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in self.ground.iter() {
            let rest = self.ground.difference(self.neighbours(i));
            for j in rest.iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Every complex on `[m]` (containing all singletons), in a fixed order.
    ///
    /// Intended for exhaustive checks; the count grows like the Dedekind
    /// numbers, so `m <= 5` is the practical range.
    pub fn enumerate_all(m: u32) -> Vec<Self> {
        assert!((1..=5).contains(&m), "exhaustive enumeration needs 1 <= m <= 5");
        let candidates: Vec<VertexSet> = (2..=m as usize)
            .flat_map(|s| {
                let mut v = Vec::new();
                subsets_of_size(VertexSet::full(m), s, &mut |x| v.push(x));
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut chosen: Vec<VertexSet> = Vec::new();
        enumerate_downsets(m, &candidates, 0, &mut chosen, &mut out);
        out
    }

    /// A random complex: each pair is an edge with probability `edge_prob`,
    /// and each triangle of the resulting graph is filled with probability 1/2.
    pub fn random<R: Rng + ?Sized>(m: u32, edge_prob: f64, rng: &mut R) -> Self {
        let mut sets = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if rng.gen_bool(edge_prob) {
                    sets.push(VertexSet::singleton(i).with(j));
                }
            }
        }
        let graph = Self::from_sets(m, VertexSet::full(m), sets.clone());
        for t in graph.cliques().into_iter().filter(|c| c.len() == 3) {
            if rng.gen_bool(0.5) {
                sets.push(t);
            }
        }
        Self::from_sets(m, VertexSet::full(m), sets)
    }

    /// Canonical text form (see [`parse_complex`]).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.m);
        for f in self.facets.iter().filter(|f| f.len() > 1) {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    fn check_subset(&self, j: VertexSet) -> Result<(), ComplexError> {
        match j.difference(VertexSet::full(self.m)).min() {
            Some(v) => Err(ComplexError::VertexOutOfRange { vertex: v as i64, m: self.m }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(m={}, ground={}, facets=[", self.m, self.ground)?;
        for (n, face) in self.facets.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{face}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self
            .facets
            .iter()
            .filter(|f| f.len() > 1)
            .map(|f| f.to_string())
            .collect();
        write!(f, "m={} [{}]", self.m, faces.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: i64,
    maximal_faces: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground: Option<Vec<i64>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let full = self.ground == VertexSet::full(self.m);
        ComplexJson {
            m: self.m as i64,
            maximal_faces: self
                .facets
                .iter()
                .map(|f| f.iter().map(i64::from).collect())
                .collect(),
            ground: (!full).then(|| self.ground.iter().map(i64::from).collect()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        from_json_form(raw).map_err(serde::de::Error::custom)
    }
}

fn from_json_form(raw: ComplexJson) -> Result<SimplicialComplex, ComplexError> {
    check_vertex_count(raw.m)?;
    let m = raw.m as u32;
    let to_set = |face: &[i64], line: usize| -> Result<VertexSet, ComplexError> {
        let mut s = VertexSet::EMPTY;
        for &v in face {
            if v < 1 || v > m as i64 {
                return Err(ComplexError::VertexOutOfRange { vertex: v, m });
            }
            if s.contains(v as u32) {
                return Err(ComplexError::DuplicateVertex { line, vertex: v as u32 });
            }
            s.insert(v as u32);
        }
        Ok(s)
    };
    let mut sets = Vec::new();
    for (n, face) in raw.maximal_faces.iter().enumerate() {
        sets.push(to_set(face, n + 1)?);
    }
    let ground = match &raw.ground {
        Some(g) => to_set(g, 0)?,
        None => VertexSet::full(m),
    };
    Ok(SimplicialComplex::from_sets(m, ground, sets))
}

fn check_vertex_count(m: i64) -> Result<(), ComplexError> {
    if m < 1 || m > MAX_VERTICES as i64 {
        Err(ComplexError::BadVertexCount(m))
    } else {
        Ok(())
    }
}

/// Parse a complex from its text form, or from the JSON form
/// `{"m": int, "maximal_faces": [[int]]}` when the input starts with `{`.
///
/// Text form: the first line holds `m`; each further non-empty line lists one
/// face as space-separated 1-based vertices; lines starting with `#` are
/// comments. Singletons are implicit.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    if text.trim_start().starts_with('{') {
        let raw: ComplexJson =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        return from_json_form(raw);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or(ComplexError::Malformed {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let m: i64 = header.parse().map_err(|_| ComplexError::Malformed {
        line: first,
        msg: format!("expected vertex count, found {header:?}"),
    })?;
    check_vertex_count(m)?;
    let m = m as u32;
    let mut sets = Vec::new();
    for (line, content) in lines {
        let mut s = VertexSet::EMPTY;
        for tok in content.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| ComplexError::Malformed {
                line,
                msg: format!("expected vertex index, found {tok:?}"),
            })?;
            if v < 1 || v > m as i64 {
                return Err(ComplexError::VertexOutOfRange { vertex: v, m });
            }
            if s.contains(v as u32) {
                return Err(ComplexError::DuplicateVertex { line, vertex: v as u32 });
            }
            s.insert(v as u32);
        }
        sets.push(s);
    }
    Ok(SimplicialComplex::from_sets(m, VertexSet::full(m), sets))
}

/// Call `f` on every subset of `set` with exactly `size` elements.
pub fn subsets_of_size(set: VertexSet, size: usize, f: &mut impl FnMut(VertexSet)) {
    fn go(rest: u64, size: usize, acc: u64, f: &mut impl FnMut(VertexSet)) {
        if size == 0 {
            f(VertexSet(acc));
            return;
        }
        if (rest.count_ones() as usize) < size {
            return;
        }
        let low = rest & rest.wrapping_neg();
        go(rest & !low, size - 1, acc | low, f);
        go(rest & !low, size, acc, f);
    }
    go(set.bits(), size, 0, f);
}

fn enumerate_downsets(
    m: u32,
    candidates: &[VertexSet],
    idx: usize,
    chosen: &mut Vec<VertexSet>,
    out: &mut Vec<SimplicialComplex>,
) {
    if idx == candidates.len() {
        out.push(SimplicialComplex::from_sets(m, VertexSet::full(m), chosen.clone()));
        return;
    }
    let c = candidates[idx];
    // Candidates are sorted by size, so every boundary face was already decided.
    let boundary_present = c.len() == 2
        || c.iter().all(|v| {
            let b = c.difference(VertexSet::singleton(v));
            chosen.iter().any(|&x| b.is_subset(x))
        });
    enumerate_downsets(m, candidates, idx + 1, chosen, out);
    if boundary_present {
        chosen.push(c);
        enumerate_downsets(m, candidates, idx + 1, chosen, out);
        chosen.pop();
    }
}
