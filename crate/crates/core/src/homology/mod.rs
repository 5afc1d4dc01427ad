//! Reduced simplicial homology over the integers and the homology of the
//! real moment-angle complex, assembled from full subcomplexes:
//!
//! `H_k(R_K) = ⊕_{J ⊆ [m]} H̃_{k-1}(K_J)`.
//!
//! Conventions: `H̃_{-1}(∅) = Z`, `H̃_{-1}` of a nonempty complex vanishes,
//! and `H̃_k(∅) = 0` for `k >= 0`. These fall out of the augmented chain
//! complex, which carries the empty face in degree -1.

mod snf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::Strategy;
use crate::scomplex::{SimplicialComplex, VertexSet};

pub use snf::{smith_normal_form, SmithForm};

/// Default largest `m` for which the `2^m` subset sweep is attempted.
pub const DEFAULT_SUBSET_CAP: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("subset sweep over 2^{m} sets exceeds the cap 2^{cap}; raise the cap to proceed")]
    CapExceeded { m: u32, cap: u32 },
    #[error("torsion coefficient {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("degree {0} is out of range")]
    BadDegree(i64),
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_s`
/// with `t_1 | t_2 | ... | t_s`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HomologyGroup {
    #[serde(rename = "rank")]
    pub free_rank: u64,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(rank: u64) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalized to invariant factors.
    pub fn direct_sum(groups: &[HomologyGroup]) -> Result<HomologyGroup, HomologyError> {
        let free_rank = groups.iter().map(|g| g.free_rank).sum();
        let cyclic: Vec<u64> = groups.iter().flat_map(|g| g.torsion.iter().copied()).collect();
        let n = cyclic.len();
        let mut diag = IntegerMatrix::zeros(n, n);
        for (i, &t) in cyclic.iter().enumerate() {
            diag.set(i, i, t as i64);
        }
        let torsion = torsion_of(&smith_normal_form(&diag))?;
        Ok(HomologyGroup { free_rank, torsion })
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn torsion_of(s: &SmithForm) -> Result<Vec<u64>, HomologyError> {
    s.torsion()
        .map(|d: &BigInt| d.to_u64().ok_or_else(|| HomologyError::Overflow(d.to_string())))
        .collect()
}

/// Simplicial boundary `∂_k` from `k`-faces to `(k-1)`-faces, rows and columns
/// indexed by faces in lexicographic order. Orientation follows the sorted
/// vertex order: `∂[v_0..v_k] = Σ (-1)^i [.., v̂_i, ..]`. For `k = 0` the single
/// row is the augmentation (all ones).
pub fn boundary_matrix(k: &SimplicialComplex, degree: usize) -> IntegerMatrix {
    let cols = k.faces_of_size(degree + 1);
    let rows = k.faces_of_size(degree);
    boundary_between(&rows, &cols)
}

fn boundary_between(rows: &[VertexSet], cols: &[VertexSet]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (c, face) in cols.iter().enumerate() {
        for (i, v) in face.iter().enumerate() {
            let mut sub = *face;
            sub.remove(v);
            let r = rows.binary_search(&sub).expect("boundary face missing from complex");
            m.set(r, c, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// `H̃_degree(K; Z)` for `degree >= -1`.
pub fn reduced_homology(k: &SimplicialComplex, degree: i64) -> Result<HomologyGroup, HomologyError> {
    if degree < -1 {
        return Err(HomologyError::BadDegree(degree));
    }
    let size = (degree + 1) as usize;
    let here = k.faces_of_size(size);
    if here.is_empty() {
        return Ok(HomologyGroup::default());
    }
    let below = if size == 0 { Vec::new() } else { k.faces_of_size(size - 1) };
    let above = k.faces_of_size(size + 1);
    let rank_out = smith_normal_form(&boundary_between(&below, &here)).rank();
    let incoming = smith_normal_form(&boundary_between(&here, &above));
    Ok(HomologyGroup {
        free_rank: (here.len() - rank_out - incoming.rank()) as u64,
        torsion: torsion_of(&incoming)?,
    })
}

/// Rank of `H_1(R_K)`: `Σ_{J ⊆ [m]} rank H̃_0(K_J)`, via component counts.
pub fn h1_rank_rk(k: &SimplicialComplex) -> u64 {
    h1_rank_rk_with(k, Strategy::default())
}

pub fn h1_rank_rk_with(k: &SimplicialComplex, strategy: Strategy) -> u64 {
    let ground = k.ground().bits();
    strategy.sum_range(1u64 << k.m(), |bits| {
        if bits & !ground != 0 || bits == 0 {
            return 0;
        }
        k.component_count(VertexSet::from_bits(bits)) as u64 - 1
    })
}

/// One nonzero summand `H̃_{k-1}(K_J)` of `H_k(R_K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    #[serde(rename = "J")]
    pub subset: VertexSet,
    pub rank: u64,
    pub torsion: Vec<u64>,
}

/// `H_k(R_K)` with its decomposition over full subcomplexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RkHomologyReport {
    pub k: u64,
    pub total: HomologyGroup,
    pub contributions: Vec<Contribution>,
}

pub fn rk_homology(k: &SimplicialComplex, degree: u64) -> Result<RkHomologyReport, HomologyError> {
    rk_homology_with(k, degree, DEFAULT_SUBSET_CAP, Strategy::default())
}

/// `H_degree(R_K)`, refusing to sweep more than `2^cap` subsets.
pub fn rk_homology_with(
    k: &SimplicialComplex,
    degree: u64,
    cap: u32,
    strategy: Strategy,
) -> Result<RkHomologyReport, HomologyError> {
    if k.m() > cap {
        return Err(HomologyError::CapExceeded { m: k.m(), cap });
    }
    let ground = k.ground().bits();
    let parts: Vec<Result<Option<Contribution>, HomologyError>> =
        strategy.map_range(1u64 << k.m(), |bits| {
            if bits & !ground != 0 {
                return Ok(None);
            }
            let j = VertexSet::from_bits(bits);
            let sub = k.full_subcomplex(j).expect("subset of ground set");
            let h = reduced_homology(&sub, degree as i64 - 1)?;
            Ok((!h.is_zero()).then_some(Contribution {
                subset: j,
                rank: h.free_rank,
                torsion: h.torsion,
            }))
        });
    let mut contributions = Vec::new();
    for p in parts {
        if let Some(c) = p? {
            contributions.push(c);
        }
    }
    contributions.sort_by_key(|c| c.subset);
    let groups: Vec<HomologyGroup> = contributions
        .iter()
        .map(|c| HomologyGroup { free_rank: c.rank, torsion: c.torsion.clone() })
        .collect();
    Ok(RkHomologyReport { k: degree, total: HomologyGroup::direct_sum(&groups)?, contributions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::parse_complex;

    fn triangle_boundary() -> SimplicialComplex {
        parse_complex("3\n1 2\n2 3\n1 3\n").unwrap()
    }

    /// Standard 6-vertex triangulation of the real projective plane.
    fn rp2() -> SimplicialComplex {
        parse_complex(
            "6\n1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n2 4 5\n2 4 6\n3 4 6\n3 5 6\n",
        )
        .unwrap()
    }

    #[test]
    fn boundary_examples() {
        let edge = SimplicialComplex::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(boundary_matrix(&edge, 1), IntegerMatrix::from_entries(2, 1, vec![-1, 1]));

        let t = boundary_matrix(&triangle_boundary(), 1);
        assert_eq!((t.rows(), t.cols()), (3, 3));
        for c in 0..3 {
            assert_eq!((0..3).map(|r| t.get(r, c)).sum::<i64>(), 0);
        }

        let d = boundary_matrix(&SimplicialComplex::discrete(3), 1);
        assert_eq!((d.rows(), d.cols()), (3, 0));

        let aug = boundary_matrix(&SimplicialComplex::discrete(3), 0);
        assert_eq!(aug, IntegerMatrix::from_entries(1, 3, vec![1, 1, 1]));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let mut samples = SimplicialComplex::enumerate_all(4);
        samples.push(rp2());
        samples.push(SimplicialComplex::simplex(5));
        for k in samples {
            for d in 1..=4 {
                let prod = boundary_matrix(&k, d - 1).mul(&boundary_matrix(&k, d));
                assert!(prod.is_zero(), "{k:?} degree {d}");
            }
        }
    }

    #[test]
    fn reduced_homology_examples() {
        assert_eq!(reduced_homology(&SimplicialComplex::discrete(3), 0).unwrap(), HomologyGroup::free(2));
        assert_eq!(reduced_homology(&triangle_boundary(), 1).unwrap(), HomologyGroup::free(1));
        let p = rp2();
        assert_eq!(
            reduced_homology(&p, 1).unwrap(),
            HomologyGroup { free_rank: 0, torsion: vec![2] }
        );
        assert!(reduced_homology(&p, 2).unwrap().is_zero());
        assert!(reduced_homology(&p, 0).unwrap().is_zero());
    }

    #[test]
    fn empty_and_degree_minus_one_conventions() {
        let k = SimplicialComplex::discrete(2);
        let empty = k.full_subcomplex(VertexSet::EMPTY).unwrap();
        assert_eq!(reduced_homology(&empty, -1).unwrap(), HomologyGroup::free(1));
        assert!(reduced_homology(&empty, 0).unwrap().is_zero());
        assert!(reduced_homology(&k, -1).unwrap().is_zero());
        assert!(reduced_homology(&k, -2).is_err());
    }

    #[test]
    fn euler_characteristic_matches() {
        let mut samples = SimplicialComplex::enumerate_all(4);
        samples.push(rp2());
        for k in samples {
            let f = k.f_vector();
            let chi_faces: i64 = f
                .iter()
                .enumerate()
                .map(|(size, &n)| if size % 2 == 1 { n as i64 } else { -(n as i64) })
                .sum();
            let chi_betti: i64 = (-1..=(f.len() as i64 - 2))
                .map(|d| {
                    let r = reduced_homology(&k, d).unwrap().free_rank as i64;
                    if d.rem_euclid(2) == 0 { r } else { -r }
                })
                .sum();
            assert_eq!(chi_faces, chi_betti, "{k:?}");
        }
    }

    #[test]
    fn face_order_does_not_matter() {
        let a = parse_complex("5\n1 2 3\n3 4\n4 5\n2 5\n").unwrap();
        let b = parse_complex("5\n5 2\n5 4\n4 3\n3 2 1\n").unwrap();
        for d in -1..=2 {
            assert_eq!(reduced_homology(&a, d).unwrap(), reduced_homology(&b, d).unwrap());
        }
    }

    #[test]
    fn h1_rank_examples() {
        assert_eq!(h1_rank_rk(&SimplicialComplex::discrete(2)), 1);
        assert_eq!(h1_rank_rk(&SimplicialComplex::discrete(3)), 5);
        assert_eq!(h1_rank_rk(&triangle_boundary()), 0);
    }

    #[test]
    fn rk_homology_examples() {
        let t = rk_homology(&triangle_boundary(), 2).unwrap();
        assert_eq!(t.total, HomologyGroup::free(1));
        assert_eq!(t.contributions.len(), 1);
        assert_eq!(t.contributions[0].subset, VertexSet::full(3));
        assert!(rk_homology(&triangle_boundary(), 1).unwrap().total.is_zero());

        let two = rk_homology(&SimplicialComplex::discrete(2), 1).unwrap();
        assert_eq!(two.total, HomologyGroup::free(1));

        for k in [triangle_boundary(), SimplicialComplex::discrete(4), rp2()] {
            let h0 = rk_homology(&k, 0).unwrap();
            assert_eq!(h0.total, HomologyGroup::free(1));
            assert_eq!(h0.contributions.len(), 1);
            assert_eq!(h0.contributions[0].subset, VertexSet::EMPTY);
        }
    }

    #[test]
    fn rk_h1_agrees_with_fast_path() {
        for k in SimplicialComplex::enumerate_all(4) {
            let report = rk_homology(&k, 1).unwrap();
            assert!(report.total.torsion.is_empty());
            assert_eq!(report.total.free_rank, h1_rank_rk(&k));
        }
    }

    #[test]
    fn rk_homology_cap() {
        let k = SimplicialComplex::discrete(6);
        assert_eq!(
            rk_homology_with(&k, 1, 5, Strategy::Sequential),
            Err(HomologyError::CapExceeded { m: 6, cap: 5 })
        );
    }

    #[test]
    fn rp2_torsion_reaches_the_total() {
        // J = [6] contributes H̃_1(RP^2) = Z/2 to H_2(R_K).
        let report = rk_homology(&rp2(), 2).unwrap();
        assert!(report.total.torsion.contains(&2));
        let full = report
            .contributions
            .iter()
            .find(|c| c.subset == VertexSet::full(6))
            .unwrap();
        assert_eq!(full.torsion, vec![2]);
    }

    #[test]
    fn direct_sum_normalizes() {
        let g = HomologyGroup::direct_sum(&[
            HomologyGroup { free_rank: 1, torsion: vec![2] },
            HomologyGroup { free_rank: 0, torsion: vec![3] },
        ])
        .unwrap();
        assert_eq!(g, HomologyGroup { free_rank: 1, torsion: vec![6] });
    }

    #[test]
    fn report_json_shape() {
        let r = rk_homology(&SimplicialComplex::discrete(2), 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"k":1,"total":{"rank":1,"torsion":[]},"contributions":[{"J":[1,2],"rank":1,"torsion":[]}]}"#
        );
    }
}
