//! Brute-force check of the lower central series ranks by coset enumeration.
//!
//! `RC_K / γ_{c+1}` is presented by the relators of `RC_K` together with all
//! simple nested commutators of length `c + 1`; these normally generate
//! `γ_{c+1}`. The quotient is a finite 2-group, and enumerating the cosets of
//! the trivial subgroup gives its regular representation.

mod enumerate;
mod identities;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::lcs::{lrck_basis, BasisElement};
use crate::par::Strategy;
use crate::scomplex::SimplicialComplex;
use crate::words::{expand_commutator, normal_form, CommutatorTuple, GroupWord};

pub use identities::{check_proof_identities, IdentityFailure, IdentityReport};

pub const DEFAULT_COSET_LIMIT: usize = 5_000_000;
pub const MAX_CLASS: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("nilpotency class {0} is outside 1..=3")]
    ClassOutOfRange(u32),
    #[error("class 4 is only supported for two generators, got {0}")]
    Class4NeedsTwoGenerators(u32),
    #[error("coset enumeration exceeded the limit of {limit} cosets")]
    CosetLimit { limit: usize },
    #[error("quotient of class {class} has order {order}, which is not a power of 2")]
    NotPowerOfTwo { class: u32, order: usize },
    #[error("coset table of class {class} has order {order}, smaller than the class {prev} order {prev_order}")]
    OrdersNotIncreasing { class: u32, order: usize, prev: u32, prev_order: usize },
    #[error("the oracle needs a class 3 table, got class {0}")]
    NeedsClass3(u32),
}

/// Options for building presentations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PresentationOptions {
    /// Replace every commutator relator by its normal form in `RC_K` and drop
    /// trivial and repeated ones. Sound because the relators of `RC_K` are kept.
    pub prune: bool,
    /// Allow class 4 when `m = 2`.
    pub allow_class4: bool,
}

/// Involutive generators `g_1..g_m` and a list of relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub m: u32,
    pub class: u32,
    pub relators: Vec<GroupWord>,
}

pub fn class_presentation(k: &SimplicialComplex, c: u32) -> Result<Presentation, OracleError> {
    class_presentation_with(k, c, PresentationOptions::default())
}

pub fn class_presentation_with(
    k: &SimplicialComplex,
    c: u32,
    opts: PresentationOptions,
) -> Result<Presentation, OracleError> {
    let m = k.m();
    match c {
        1..=3 => {}
        4 if opts.allow_class4 && m == 2 => {}
        4 if opts.allow_class4 => return Err(OracleError::Class4NeedsTwoGenerators(m)),
        _ => return Err(OracleError::ClassOutOfRange(c)),
    }
    let mut base: Vec<GroupWord> = (1..=m).map(|i| GroupWord::new(vec![i, i])).collect();
    for (i, j) in k.edges() {
        base.push(expand_commutator(&CommutatorTuple::new(vec![i, j]).expect("pair")));
    }
    let mut relators = Vec::new();
    let len = c as usize + 1;
    let mut idx = vec![1u32; len];
    loop {
        relators.push(expand_commutator(&CommutatorTuple::new(idx.clone()).expect("length >= 2")));
        // next tuple in {1..m}^len, last index fastest
        let mut p = len;
        loop {
            if p == 0 {
                return Ok(finish(k, c, base, relators, opts));
            }
            p -= 1;
            if idx[p] < m {
                idx[p] += 1;
                break;
            }
            idx[p] = 1;
        }
    }
}

fn finish(
    k: &SimplicialComplex,
    class: u32,
    mut base: Vec<GroupWord>,
    commutators: Vec<GroupWord>,
    opts: PresentationOptions,
) -> Presentation {
    if opts.prune {
        let mut seen = HashSet::new();
        let reduced = commutators.iter().map(|r| normal_form(k, r));
        base.extend(reduced.filter(|r| !r.is_empty() && seen.insert(r.clone())));
    } else {
        base.extend(commutators);
    }
    Presentation { m: k.m(), class, relators: base }
}

/// A permutation of cosets; `p[c]` is the image of coset `c` under right action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn apply(&self, c: u32) -> u32 {
        self.0[c as usize]
    }
}

/// Complete coset table of the trivial subgroup; coset 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    class: u32,
    n: usize,
    columns: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn generators(&self) -> usize {
        self.columns.len()
    }

    /// Action of `g_i` (1-based).
    pub fn generator(&self, i: u32) -> Permutation {
        Permutation(self.columns[i as usize - 1].clone())
    }

    /// Image of coset `c` under `w`.
    pub fn act(&self, c: u32, w: &GroupWord) -> u32 {
        w.letters().iter().fold(c, |c, &v| self.columns[v as usize - 1][c as usize])
    }

    /// The element named by `w`, as the coset `0·w`. The action is regular, so
    /// two words are equal in the quotient iff these agree.
    pub fn element(&self, w: &GroupWord) -> u32 {
        self.act(0, w)
    }

    pub fn is_trivial(&self, w: &GroupWord) -> bool {
        self.element(w) == 0
    }

    pub fn equal(&self, u: &GroupWord, v: &GroupWord) -> bool {
        self.element(u) == self.element(v)
    }

    /// Every generator acts as an involution and every relator fixes every coset.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        let involutions = self
            .columns
            .iter()
            .all(|col| col.iter().enumerate().all(|(c, &d)| col[d as usize] as usize == c));
        involutions && p.relators.iter().all(|r| (0..self.n as u32).all(|c| self.act(c, r) == c))
    }

    /// Every coset is `0·w` for some word `w`.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for col in &self.columns {
                let d = col[c as usize];
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn evaluate(table: &CosetTable, w: &GroupWord) -> Permutation {
    let mut p = Permutation::identity(table.n);
    for &v in w.letters() {
        let col = &table.columns[v as usize - 1];
        for x in p.0.iter_mut() {
            *x = col[*x as usize];
        }
    }
    p
}

pub fn todd_coxeter(p: &Presentation, coset_limit: usize) -> Result<CosetTable, OracleError> {
    let (n, columns) = enumerate::enumerate(p.m as usize, &p.relators, coset_limit)?;
    Ok(CosetTable { class: p.class, n, columns })
}

/// Class-`c` coset table of `RC_K`.
pub fn class_table(k: &SimplicialComplex, c: u32, coset_limit: usize) -> Result<CosetTable, OracleError> {
    todd_coxeter(&class_presentation(k, c)?, coset_limit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRanks {
    /// `|RC_K / γ_{k+1}|` for `k = 1..=c`.
    pub orders: Vec<usize>,
    pub ranks: Vec<u32>,
}

impl fmt::Display for OracleRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.ranks.iter().map(u32::to_string).collect();
        write!(f, "({})", r.join(", "))
    }
}

pub fn oracle_ranks(k: &SimplicialComplex, c: u32, coset_limit: usize) -> Result<OracleRanks, OracleError> {
    oracle_ranks_with(k, c, coset_limit, PresentationOptions::default(), Strategy::default())
}

/// Ranks from the orders of the quotients of classes `1..=c`; the classes are
/// enumerated independently, in parallel under [`Strategy::Parallel`].
pub fn oracle_ranks_with(
    k: &SimplicialComplex,
    c: u32,
    coset_limit: usize,
    opts: PresentationOptions,
    strategy: Strategy,
) -> Result<OracleRanks, OracleError> {
    let top = if opts.allow_class4 { 4 } else { MAX_CLASS };
    if c == 0 || c > top {
        return Err(OracleError::ClassOutOfRange(c));
    }
    let results = strategy.map_range(c as u64, |i| {
        let p = class_presentation_with(k, i as u32 + 1, opts)?;
        todd_coxeter(&p, coset_limit).map(|t| t.order())
    });
    let orders = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    ranks_from_orders(&orders)
}

pub fn ranks_from_orders(orders: &[usize]) -> Result<OracleRanks, OracleError> {
    let mut ranks = Vec::with_capacity(orders.len());
    let mut prev = 1usize;
    for (i, &order) in orders.iter().enumerate() {
        let class = i as u32 + 1;
        if !order.is_power_of_two() {
            return Err(OracleError::NotPowerOfTwo { class, order });
        }
        if order % prev != 0 {
            return Err(OracleError::OrdersNotIncreasing { class, order, prev: class - 1, prev_order: prev });
        }
        ranks.push((order / prev).trailing_zeros());
        prev = order;
    }
    Ok(OracleRanks { orders: orders.to_vec(), ranks })
}

/// Outcome of testing the degree-3 basis inside a class-3 table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub basis_size: usize,
    /// Order of the subgroup generated by the basis images.
    pub subgroup_order: usize,
    /// Basis elements lying in the span of the earlier ones.
    pub dependent: Vec<String>,
    /// Images failing to be involutions or to commute pairwise.
    pub not_elementary_abelian: Vec<String>,
}

impl IndependenceReport {
    pub fn ok(&self) -> bool {
        self.dependent.is_empty()
            && self.not_elementary_abelian.is_empty()
            && self.subgroup_order == 1usize << self.basis_size
    }
}

/// Check that the images of the degree-3 basis generate an elementary abelian
/// subgroup of order `2^{r3}`.
pub fn l3_independence(k: &SimplicialComplex, table: &CosetTable) -> Result<IndependenceReport, OracleError> {
    if table.class() != 3 {
        return Err(OracleError::NeedsClass3(table.class()));
    }
    let basis = lrck_basis(k, 3).expect("degree 3 is in range");
    let words: Vec<(String, GroupWord)> = basis
        .iter()
        .map(|b: &BasisElement| (b.to_string(), expand_commutator(&b.tuple().expect("degree 3"))))
        .collect();
    let perms: Vec<Permutation> = words.iter().map(|(_, w)| evaluate(table, w)).collect();

    let mut not_elementary_abelian = Vec::new();
    for (a, (name, _)) in perms.iter().zip(&words) {
        if !a.then(a).is_identity() {
            not_elementary_abelian.push(format!("{name} has order > 2"));
        }
    }
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            if perms[i].then(&perms[j]) != perms[j].then(&perms[i]) {
                not_elementary_abelian.push(format!("{} and {} do not commute", words[i].0, words[j].0));
            }
        }
    }

    // Subgroup elements as cosets 0·s; adding an independent commuting
    // involution h doubles it to S ∪ S·h.
    let mut members = vec![false; table.order()];
    members[0] = true;
    let mut elements = vec![0u32];
    let mut dependent = Vec::new();
    for (p, (name, _)) in perms.iter().zip(&words) {
        if members[p.apply(0) as usize] {
            dependent.push(name.clone());
            continue;
        }
        let shifted: Vec<u32> = elements.iter().map(|&s| p.apply(s)).collect();
        for s in shifted {
            if !members[s as usize] {
                members[s as usize] = true;
                elements.push(s);
            }
        }
    }
    Ok(IndependenceReport { basis_size: basis.len(), subgroup_order: elements.len(), dependent, not_elementary_abelian })
}
