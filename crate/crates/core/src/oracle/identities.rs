//! Commutator identities from the degree-3 basis argument, evaluated in the
//! class-3 quotient.
//!
//! The quotient has `γ_4 = 1` and `γ_2' = (γ_2, γ_2) ⊆ γ_4`, so every
//! congruence modulo `γ_2'` becomes an equality of cosets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scomplex::{SimplicialComplex, Vertex};
use crate::words::{commutator, equal_in_group, nested_commutator, GroupWord};

use super::{CosetTable, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub instance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, holds: bool, identity: &str, instance: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.failures.push(IdentityFailure { identity: identity.to_string(), instance: instance() });
        }
    }
}

fn g(i: Vertex) -> GroupWord {
    GroupWord::letter(i)
}

fn c(idx: &[Vertex]) -> GroupWord {
    nested_commutator(&idx.iter().map(|&i| g(i)).collect::<Vec<_>>())
}

fn power(w: &GroupWord, e: i32) -> GroupWord {
    let base = if e < 0 { w.inverse() } else { w.clone() };
    (0..e.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.concat(&base))
}

fn cat(ws: &[GroupWord]) -> GroupWord {
    ws.iter().fold(GroupWord::identity(), |acc, w| acc.concat(w))
}

fn random_word(rng: &mut ChaCha8Rng, m: u32, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::new((0..len).map(|_| rng.gen_range(1..=m)).collect())
}

/// Right-hand side of the expansion of `(g_q, (g_p, x))`:
/// `(g_q,x)(x,(g_p,g_q))(g_q,g_p)(x,g_p)(g_p,(g_q,x))(x,g_q)(g_p,g_q)(g_p,x)`.
pub(crate) fn swap_expansion(p: Vertex, q: Vertex, x: &GroupWord) -> (GroupWord, GroupWord) {
    let (gp, gq) = (g(p), g(q));
    let lhs = commutator(&gq, &commutator(&gp, x));
    let rhs = cat(&[
        commutator(&gq, x),
        commutator(x, &commutator(&gp, &gq)),
        commutator(&gq, &gp),
        commutator(x, &gp),
        commutator(&gp, &commutator(&gq, x)),
        commutator(x, &gq),
        commutator(&gp, &gq),
        commutator(&gp, x),
    ]);
    (lhs, rhs)
}

/// Check the type A and B identities on every choice of distinct indices, and
/// the congruences used alongside them on `samples` seeded random instances
/// each.
pub fn check_proof_identities(
    k: &SimplicialComplex,
    table: &CosetTable,
    seed: u64,
    samples: usize,
) -> Result<IdentityReport, OracleError> {
    if table.class() != 3 {
        return Err(OracleError::NeedsClass3(table.class()));
    }
    let m = k.m();
    let mut report = IdentityReport::default();
    let eq = |u: &GroupWord, v: &GroupWord| table.equal(u, v);

    for i in 1..=m {
        for j in (1..=m).filter(|&j| j != i) {
            report.record(eq(&c(&[i, j, j, j]), &power(&c(&[j, i, j]), 2)), "(i,j,j,j) = (j,i,j)^2", || {
                format!("i={i} j={j}")
            });
            for kk in (1..=m).filter(|&kk| kk != i && kk != j) {
                let inst = || format!("i={i} j={j} k={kk}");
                let ijk_m2 = power(&c(&[i, j, kk]), -2);
                report.record(eq(&c(&[i, j, i, kk]), &power(&c(&[j, i, kk]), 2)), "(i,j,i,k) = (j,i,k)^2", inst);
                report.record(eq(&c(&[i, j, kk, i]), &ijk_m2), "(i,j,k,i) = (i,j,k)^-2", inst);
                report.record(eq(&c(&[i, j, kk, j]), &ijk_m2), "(i,j,k,j) = (i,j,k)^-2", inst);
                report.record(eq(&c(&[i, j, kk, kk]), &ijk_m2), "(i,j,k,k) = (i,j,k)^-2", inst);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let [a, b, cc, d] = std::array::from_fn(|_| random_word(&mut rng, m, 6));
        let lhs = commutator(&a, &b).concat(&commutator(&cc, &d));
        let rhs = commutator(&cc, &d).concat(&commutator(&a, &b));
        report.record(eq(&lhs, &rhs), "(a,b)(c,d) = (c,d)(a,b)", || format!("a={a} b={b} c={cc} d={d}"));

        let comm3 = |x: &GroupWord, y: &GroupWord, z: &GroupWord| commutator(&commutator(x, y), z);
        let jacobi = cat(&[comm3(&a, &b, &cc), comm3(&b, &cc, &a), comm3(&cc, &a, &b)]);
        report.record(table.is_trivial(&jacobi), "(a,b,c)(b,c,a)(c,a,b) = 1", || format!("a={a} b={b} c={cc}"));

        let p = rng.gen_range(1..=m);
        let q = rng.gen_range(1..=m);
        let x = commutator(&g(rng.gen_range(1..=m)), &g(rng.gen_range(1..=m)));
        let lhs = commutator(&g(q), &commutator(&g(p), &x));
        let rhs = commutator(&g(p), &commutator(&g(q), &x));
        report.record(eq(&lhs, &rhs), "(g_q,(g_p,x)) = (g_p,(g_q,x)) for x in γ_2", || format!("p={p} q={q} x={x}"));

        let y = random_word(&mut rng, m, 6);
        let (lhs, rhs) = swap_expansion(p, q, &y);
        let holds = eq(&lhs, &rhs) && equal_in_group(k, &lhs, &rhs);
        report.record(holds, "expansion of (g_q,(g_p,x))", || format!("p={p} q={q} x={y}"));
    }
    Ok(report)
}
