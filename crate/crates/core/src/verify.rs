//! Cross-checks of the theoretical results against the independent oracles,
//! collected into one report.

use serde::Serialize;

use crate::glie::{hilbert_series_check, phi_comparison};
use crate::homology::{h1_rank_rk_with, rk_homology_with, DEFAULT_SUBSET_CAP};
use crate::lcs::{gscox_generators_with, lcs_ranks};
use crate::oracle::{
    check_proof_identities, class_table, l3_independence, ranks_from_orders, OracleError, DEFAULT_COSET_LIMIT,
};
use crate::par::Strategy;
use crate::scomplex::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    /// The theory and the oracle disagree.
    Fail,
    /// A resource guard stopped the check.
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Fail)
    }

    pub fn has_abort(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Aborted)
    }

    fn push(&mut self, name: &str, outcome: Outcome, detail: String) {
        self.checks.push(Check { name: name.to_string(), outcome, detail });
    }

    fn expect(&mut self, name: &str, ok: bool, detail: String) {
        self.push(name, if ok { Outcome::Pass } else { Outcome::Fail }, detail);
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub coset_limit: usize,
    pub seed: u64,
    /// Random instances per sampled identity.
    pub samples: usize,
    pub hilbert_degree: usize,
    pub strategy: Strategy,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            coset_limit: DEFAULT_COSET_LIMIT,
            seed: 0,
            samples: 50,
            hilbert_degree: 6,
            strategy: Strategy::default(),
        }
    }
}

pub fn verify(k: &SimplicialComplex, opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport { checks: Vec::new() };

    let gens = gscox_generators_with(k, opts.strategy).len() as u64;
    let h1 = h1_rank_rk_with(k, opts.strategy);
    report.expect("generator count = rank H1(R_K)", gens == h1, format!("{gens} generators, rank {h1}"));

    match rk_homology_with(k, 1, DEFAULT_SUBSET_CAP, opts.strategy) {
        Ok(r) => report.expect(
            "H1(R_K) torsion-free and equal to the fast count",
            r.total.torsion.is_empty() && r.total.free_rank == h1,
            format!("H1 = {}", r.total),
        ),
        Err(e) => report.push("H1(R_K) torsion-free and equal to the fast count", Outcome::Aborted, e.to_string()),
    }

    let ranks = lcs_ranks(k);
    let tables: Vec<Result<_, OracleError>> =
        opts.strategy.map_range(3, |c| class_table(k, c as u32 + 1, opts.coset_limit));
    let oracle_name = "LCS ranks = coset enumeration";
    let class3 = match tables.into_iter().collect::<Result<Vec<_>, _>>() {
        Ok(tables) => {
            let orders: Vec<usize> = tables.iter().map(|t| t.order()).collect();
            match ranks_from_orders(&orders) {
                Ok(o) => {
                    let want = ranks.as_array().map(|x| x as u32);
                    report.expect(
                        oracle_name,
                        o.ranks == want,
                        format!("theory {ranks}, oracle {o} from orders {orders:?}"),
                    );
                }
                Err(e) => report.push(oracle_name, Outcome::Fail, e.to_string()),
            }
            tables.into_iter().nth(2)
        }
        Err(e) => {
            report.push(oracle_name, Outcome::Aborted, e.to_string());
            None
        }
    };

    let identities = "proof identities in G/γ4";
    let independence = "degree-3 basis independent in G/γ4";
    match &class3 {
        Some(t) => {
            let r = check_proof_identities(k, t, opts.seed, opts.samples).expect("class 3 table");
            let detail = match r.failures.first() {
                None => format!("{} instances", r.checked),
                Some(f) => format!("{} of {} failed, first: {} at {}", r.failures.len(), r.checked, f.identity, f.instance),
            };
            report.expect(identities, r.ok(), detail);
            let r = l3_independence(k, t).expect("class 3 table");
            let mut problems = r.dependent.clone();
            problems.extend(r.not_elementary_abelian.iter().cloned());
            report.expect(
                independence,
                r.ok(),
                format!("{} elements, subgroup order {}{}", r.basis_size, r.subgroup_order, tail(&problems)),
            );
        }
        None => {
            report.push(identities, Outcome::Aborted, "no class 3 table".into());
            report.push(independence, Outcome::Aborted, "no class 3 table".into());
        }
    }

    let phi = "graph Lie algebra vs L(RC_K) in degrees <= 3";
    match phi_comparison(k, 3) {
        Ok(rows) => {
            let ok = rows.iter().all(|r| r.surjective) && rows.iter().take(2).all(|r| r.equal);
            let pairs: Vec<String> = rows.iter().map(|r| format!("d{}: {} vs {}", r.degree, r.lie_dim, r.group_rank)).collect();
            report.expect(phi, ok, pairs.join(", "));
        }
        Err(e) => report.push(phi, Outcome::Aborted, e.to_string()),
    }

    let hilbert = "Hilbert series = 1 / clique polynomial";
    match hilbert_series_check(k, opts.hilbert_degree) {
        Ok(h) => {
            let detail = match h.first_mismatch {
                None => format!("through degree {}", h.max_degree),
                Some(d) => format!("degree {d}: {} vs {}", h.from_dims[d], h.from_cliques[d]),
            };
            report.expect(hilbert, h.agrees(), detail);
        }
        Err(e) => report.push(hilbert, Outcome::Aborted, e.to_string()),
    }
    report
}

fn tail(problems: &[String]) -> String {
    if problems.is_empty() {
        String::new()
    } else {
        format!("; {}", problems.join("; "))
    }
}
