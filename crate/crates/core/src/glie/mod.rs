//! Graph Lie algebras over GF(2).
//!
//! `L_K` is the free Lie algebra over GF(2) on `μ_1..μ_m` modulo
//! `[μ_i, μ_j] = 0` for edges `{i, j}` of `K`. Elements are written in the
//! Lyndon basis of the free algebra, and the relation ideal is built degree
//! by degree as `I_d = [I_{d-1}, L_1] + S_d`, where `S_d` are the relations
//! seeded in degree `d`. This recursion is valid because every algebra here is
//! generated in degree 1.
//!
//! Dimensions are over GF(2). That they agree with the ranks of the integral
//! graph Lie algebra relies on its torsion-freeness, which is taken from the
//! literature and not checked here.

mod gf2;
mod lyndon;
mod relations;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::lcs::lcs_ranks;
use crate::scomplex::SimplicialComplex;

pub use gf2::{BitVector, Gf2Span};
pub use lyndon::{
    bracket, is_lyndon, lyndon_basis, lyndon_words, standard_factorization, witt_number, LieElement,
    LieEngine, LyndonMonomial, Word,
};
pub use relations::{parse_relation, parse_relations, rc2point_relations, Relation, RelationError};

/// Largest Lyndon basis (in any single degree) the ideal construction accepts.
pub const DEFAULT_BASIS_CAP: u64 = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("maximum degree must be at least 1")]
    ZeroDegree,
    #[error("relation on line {line} has degree {degree}, above the maximum degree {max}")]
    RelationDegree { line: usize, degree: usize, max: usize },
    #[error("degree {degree} basis over {m} letters has {size} elements, above the cap {cap}")]
    TooLarge { m: u32, degree: usize, size: u64, cap: u64 },
    #[error("comparison with group ranks is available only through degree 3, got {0}")]
    PhiDegree(usize),
    #[error("too many generators for the Lie algebra routines: {0}")]
    TooManyGenerators(u32),
}

/// Graded dimensions `d_1, ..., d_D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GradedDims {
    pub dims: Vec<u64>,
}

impl GradedDims {
    /// Dimension in degree `d` (1-based); 0 outside the computed range.
    pub fn get(&self, d: usize) -> u64 {
        d.checked_sub(1).and_then(|i| self.dims.get(i)).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len()
    }
}

impl std::fmt::Display for GradedDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Dimensions of `L_K` in degrees `1..=max_degree`.
pub fn graph_lie_dims(k: &SimplicialComplex, max_degree: usize) -> Result<GradedDims, LieError> {
    quotient_dims(k, &[], max_degree)
}

/// Dimensions of `L_K` modulo the ideal generated by `relations`.
pub fn quotient_dims(k: &SimplicialComplex, relations: &[Relation], max_degree: usize) -> Result<GradedDims, LieError> {
    quotient_dims_capped(k, relations, max_degree, DEFAULT_BASIS_CAP)
}

pub fn quotient_dims_capped(
    k: &SimplicialComplex,
    relations: &[Relation],
    max_degree: usize,
    cap: u64,
) -> Result<GradedDims, LieError> {
    if max_degree == 0 {
        return Err(LieError::ZeroDegree);
    }
    let m = k.m();
    if m > u8::MAX as u32 {
        return Err(LieError::TooManyGenerators(m));
    }
    for r in relations {
        if r.degree() > max_degree {
            return Err(LieError::RelationDegree { line: r.line, degree: r.degree(), max: max_degree });
        }
    }
    for d in 1..=max_degree {
        let size = witt_number(m as u64, d as u64);
        if size > cap {
            return Err(LieError::TooLarge { m, degree: d, size, cap });
        }
    }

    let mut seeds: Vec<Vec<LieElement>> = vec![Vec::new(); max_degree + 1];
    if max_degree >= 2 {
        for (i, j) in k.edges() {
            seeds[2].push(bracket(&LieElement::generator(i as u8), &LieElement::generator(j as u8)));
        }
    }
    for r in relations {
        if !r.element.is_zero() {
            seeds[r.degree()].push(r.element.clone());
        }
    }

    let generators: Vec<LieElement> = (1..=m as u8).map(LieElement::generator).collect();
    let mut engine = LieEngine::new();
    let mut dims = Vec::with_capacity(max_degree);
    let mut ideal_prev: Vec<LieElement> = Vec::new();
    for (d, seeds_d) in seeds.iter().enumerate().skip(1) {
        let basis = lyndon_words(m as u8, d);
        let index: HashMap<&[u8], usize> = basis.iter().enumerate().map(|(n, w)| (w.as_slice(), n)).collect();
        let mut span = Gf2Span::new(basis.len());
        let mut ideal = Vec::new();
        let lifted = ideal_prev.iter().flat_map(|x| generators.iter().map(move |g| (x, g)));
        let candidates = lifted.map(|(x, g)| engine.bracket(x, g)).collect::<Vec<_>>();
        for c in candidates.into_iter().chain(seeds_d.iter().cloned()) {
            let mut v = BitVector::zeros(basis.len());
            for w in c.term_words() {
                v.flip(index[w.as_slice()]);
            }
            if span.insert(v) {
                ideal.push(c);
            }
        }
        dims.push((basis.len() - span.rank()) as u64);
        ideal_prev = ideal;
    }
    Ok(GradedDims { dims })
}

/// One degree of the comparison between `L_K` and the associated graded
/// group `L(RC_K)`, which `L_K` surjects onto.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiRow {
    pub degree: usize,
    pub lie_dim: u64,
    pub group_rank: u64,
    /// `lie_dim >= group_rank`, as surjectivity requires.
    pub surjective: bool,
    pub equal: bool,
}

pub fn phi_comparison(k: &SimplicialComplex, max_degree: usize) -> Result<Vec<PhiRow>, LieError> {
    if max_degree == 0 {
        return Err(LieError::ZeroDegree);
    }
    if max_degree > 3 {
        return Err(LieError::PhiDegree(max_degree));
    }
    let dims = graph_lie_dims(k, max_degree)?;
    let ranks = lcs_ranks(k).as_array();
    Ok((1..=max_degree)
        .map(|d| {
            let (lie_dim, group_rank) = (dims.get(d), ranks[d - 1]);
            PhiRow { degree: d, lie_dim, group_rank, surjective: lie_dim >= group_rank, equal: lie_dim == group_rank }
        })
        .collect())
}

/// Comparison of `Π_d (1 - t^d)^{-dims_d}` with `1 / Σ_C (-t)^{|C|}`, the sum
/// running over the cliques of the 1-skeleton (the empty clique included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub max_degree: usize,
    pub from_dims: Vec<i128>,
    pub from_cliques: Vec<i128>,
    pub first_mismatch: Option<usize>,
}

impl HilbertCheck {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Coefficients `0..=n` of `Π_d (1 - t^d)^{-dims_d}`.
pub fn series_from_dims(dims: &GradedDims, n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    out[0] = 1;
    for (i, &e) in dims.dims.iter().enumerate() {
        let d = i + 1;
        if d > n {
            break;
        }
        // (1 - t^d)^{-e} = Σ_j C(e + j - 1, j) t^{dj}
        let mut factor = vec![0i128; n + 1];
        let mut c: i128 = 1;
        for j in 0..=n / d {
            factor[d * j] = c;
            c = c * (e as i128 + j as i128) / (j as i128 + 1);
        }
        out = multiply_truncated(&out, &factor, n);
    }
    out
}

/// Coefficients `0..=n` of the reciprocal of a power series with constant term 1.
pub fn reciprocal_series(p: &[i128], n: usize) -> Vec<i128> {
    assert_eq!(p.first(), Some(&1));
    let mut q = vec![0i128; n + 1];
    q[0] = 1;
    for i in 1..=n {
        q[i] = -(1..=i).map(|j| p.get(j).copied().unwrap_or(0) * q[i - j]).sum::<i128>();
    }
    q
}

fn multiply_truncated(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        if x != 0 {
            for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `Σ_C (-t)^{|C|}` over the cliques of the 1-skeleton.
pub fn clique_polynomial(k: &SimplicialComplex) -> Vec<i128> {
    let mut p = vec![0i128; k.m() as usize + 1];
    for c in k.cliques() {
        p[c.len()] += if c.len() % 2 == 0 { 1 } else { -1 };
    }
    p
}

pub fn hilbert_series_check(k: &SimplicialComplex, max_degree: usize) -> Result<HilbertCheck, LieError> {
    let dims = graph_lie_dims(k, max_degree)?;
    let from_dims = series_from_dims(&dims, max_degree);
    let from_cliques = reciprocal_series(&clique_polynomial(k), max_degree);
    let first_mismatch = (0..=max_degree).find(|&i| from_dims[i] != from_cliques[i]);
    Ok(HilbertCheck { max_degree, from_dims, from_cliques, first_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::VertexSet;
    use rand::{Rng, SeedableRng};

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::discrete(2)
    }

    #[test]
    fn examples() {
        assert_eq!(graph_lie_dims(&two_points(), 5).unwrap().dims, vec![2, 1, 2, 3, 6]);
        assert_eq!(graph_lie_dims(&SimplicialComplex::simplex(2), 4).unwrap().dims, vec![2, 0, 0, 0]);
        let path = SimplicialComplex::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(graph_lie_dims(&path, 2).unwrap().get(2), 1);
    }

    #[test]
    fn two_point_quotients() {
        let k = two_points();
        assert_eq!(quotient_dims(&k, &[], 3).unwrap().dims, vec![2, 1, 2]);
        let one = parse_relation("[1,2,1] + [1,2,2]", 2, 1).unwrap();
        assert_eq!(quotient_dims(&k, &[one], 3).unwrap().get(3), 1);
        let dims = quotient_dims(&k, &rc2point_relations(8), 8).unwrap();
        assert_eq!(dims.dims, vec![2, 1, 1, 1, 1, 1, 1, 1]);
        let free = graph_lie_dims(&k, 8).unwrap();
        assert_eq!(free.dims, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn relation_above_max_degree_is_rejected() {
        let r = parse_relation("[[1,2],1,[1,2]]", 2, 7).unwrap();
        assert_eq!(
            quotient_dims(&two_points(), &[r], 4),
            Err(LieError::RelationDegree { line: 7, degree: 5, max: 4 })
        );
        assert_eq!(graph_lie_dims(&two_points(), 0), Err(LieError::ZeroDegree));
    }

    #[test]
    fn basis_cap_guard() {
        let k = SimplicialComplex::discrete(4);
        assert!(matches!(quotient_dims_capped(&k, &[], 8, 1000), Err(LieError::TooLarge { degree: 7, .. })));
    }

    #[test]
    fn complete_and_discrete() {
        for m in 1..=5u32 {
            let dims = graph_lie_dims(&SimplicialComplex::from_edges(m, &complete_edges(m)).unwrap(), 5).unwrap();
            let mut want = vec![0; 5];
            want[0] = m as u64;
            assert_eq!(dims.dims, want);
        }
        for m in 1..=3u32 {
            let d = if m == 3 { 7 } else { 10 };
            let dims = graph_lie_dims(&SimplicialComplex::discrete(m), d).unwrap();
            let witt: Vec<u64> = (1..=d as u64).map(|e| witt_number(m as u64, e)).collect();
            assert_eq!(dims.dims, witt);
        }
    }

    fn complete_edges(m: u32) -> Vec<(u32, u32)> {
        (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect()
    }

    #[test]
    fn empty_relations_match_graph_dims() {
        for k in SimplicialComplex::enumerate_all(4) {
            assert_eq!(quotient_dims(&k, &[], 5).unwrap(), graph_lie_dims(&k, 5).unwrap());
        }
    }

    #[test]
    fn low_degree_agrees_with_group_ranks() {
        for m in 1..=5 {
            for k in SimplicialComplex::enumerate_all(m) {
                let rows = phi_comparison(&k, 3).unwrap();
                assert!(rows[0].equal && rows[1].equal, "{}", k.to_text());
                assert_eq!(rows[1].lie_dim, k.missing_edges().len() as u64);
                assert!(rows[2].surjective, "{}", k.to_text());
            }
        }
        let rows = phi_comparison(&two_points(), 3).unwrap();
        assert_eq!((rows[2].lie_dim, rows[2].group_rank, rows[2].equal), (2, 1, false));
        assert_eq!(phi_comparison(&two_points(), 4), Err(LieError::PhiDegree(4)));
    }

    fn jacobi_sum(e: &mut LieEngine, x: &LieElement, y: &LieElement, z: &LieElement) -> LieElement {
        let (xy, yz, zx) = (e.bracket(x, y), e.bracket(y, z), e.bracket(z, x));
        e.bracket(&xy, z).add(&e.bracket(&yz, x)).add(&e.bracket(&zx, y))
    }

    #[test]
    fn jacobi_on_random_monomials() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut e = LieEngine::new();
        for _ in 0..1000 {
            let m = rng.gen_range(2..=4u8);
            let degs = loop {
                let d: [usize; 3] = [rng.gen_range(1..=4), rng.gen_range(1..=3), rng.gen_range(1..=3)];
                if d.iter().sum::<usize>() <= 8 {
                    break d;
                }
            };
            let pick = |rng: &mut rand_chacha::ChaCha8Rng, d: usize| {
                let b = lyndon_basis(m, d);
                LieElement::monomial(&b[rng.gen_range(0..b.len())])
            };
            let (x, y, z) = (pick(&mut rng, degs[0]), pick(&mut rng, degs[1]), pick(&mut rng, degs[2]));
            assert!(jacobi_sum(&mut e, &x, &y, &z).is_zero(), "{x:?} {y:?} {z:?}");
        }
    }

    #[test]
    fn bracket_is_alternating_on_sums() {
        let mut e = LieEngine::new();
        let b = lyndon_basis(3, 3);
        let x = LieElement::monomial(&b[0]).add(&LieElement::monomial(&b[4]));
        assert!(e.bracket(&x, &x).is_zero());
    }

    #[test]
    fn hilbert_identity_with_cliques() {
        for m in 1..=4 {
            for k in SimplicialComplex::enumerate_all(m) {
                let check = hilbert_series_check(&k, 6).unwrap();
                assert!(check.agrees(), "{} {:?}", k.to_text(), check);
            }
        }
    }

    #[test]
    fn face_polynomial_differs_for_non_flag_complexes() {
        // The boundary of a triangle has the same graph as the full triangle,
        // so L_K is abelian, but its face polynomial lacks the 2-simplex.
        let k = SimplicialComplex::from_edges(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!k.is_flag());
        let faces: Vec<i128> = (0..=3)
            .map(|size| if size % 2 == 0 { 1 } else { -1 } * k.faces_of_size(size).len() as i128)
            .collect();
        let dims = graph_lie_dims(&k, 4).unwrap();
        assert_ne!(reciprocal_series(&faces, 4), series_from_dims(&dims, 4));
        assert!(hilbert_series_check(&k, 4).unwrap().agrees());
        let full = k.with_face(VertexSet::full(3));
        assert_eq!(graph_lie_dims(&full, 4).unwrap(), dims);
    }

    #[test]
    fn series_helpers() {
        // 1/(1-t)^2 = 1 + 2t + 3t^2 + ...
        let dims = GradedDims { dims: vec![2] };
        assert_eq!(series_from_dims(&dims, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(reciprocal_series(&[1, -2], 4), vec![1, 2, 4, 8, 16]);
    }
}
