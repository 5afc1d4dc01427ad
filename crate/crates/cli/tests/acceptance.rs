//! Acceptance suite: one PASS/FAIL line per criterion. Exits with status 3
//! when any criterion fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use racg_lcs::glie::{self, witt_number, LieElement, LieEngine};
use racg_lcs::homology::{h1_rank_rk, rk_homology};
use racg_lcs::lcs::{gscox_generators, lcs_ranks, lrck_basis};
use racg_lcs::oracle::{check_proof_identities, class_table, l3_independence, DEFAULT_COSET_LIMIT};
use racg_lcs::words::{verify_hall_witt, GroupWord};
use racg_lcs::{parse_complex, SimplicialComplex};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Run the binary with the complex on stdin; returns (exit code, stdout).
fn racg(args: &[&str], complex: &SimplicialComplex) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_racg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn racg");
    child.stdin.take().unwrap().write_all(complex.to_text().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn racg_json(args: &[&str], complex: &SimplicialComplex) -> Result<Value, String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = racg(&full, complex);
    ensure(code == 0, || format!("racg {args:?} exited {code} on\n{}", complex.to_text()))?;
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn one_line(k: &SimplicialComplex) -> String {
    k.to_text().trim().replace('\n', " | ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases: [(&str, &[&str]); 3] = [
        ("3\n", &["[g1,g2,g2]", "[g2,g3,g3]", "[g1,g3,g3]", "[g1,g3,g2]", "[g2,g3,g1]"]),
        ("3\n1 2\n", &["[g2,g3,g3]", "[g1,g3,g3]", "[g1,g3,g2]"]),
        ("3\n1 2\n2 3\n", &["[g1,g3,g3]"]),
    ];
    for (text, want) in cases {
        let k = parse_complex(text).unwrap();
        let got: Vec<String> = lrck_basis(&k, 3).unwrap().iter().map(|b| b.to_string()).collect();
        ensure(got == want, || format!("{}: got {got:?}", one_line(&k)))?;
    }
    let t = within(Duration::from_secs(1), start)?;
    Ok(format!("bases of sizes 5, 3, 1 in published order ({t:.2?})"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let k = SimplicialComplex::discrete(2);
    let quotient = racg_json(&["lie-dims", "-", "--max-degree", "8", "--rc2point", "--compare"], &k)?;
    let dims: Vec<u64> = serde_json::from_value(quotient["dims"].clone()).unwrap();
    ensure(dims == [2, 1, 1, 1, 1, 1, 1, 1], || format!("quotient dims {dims:?}"))?;
    let row3 = &quotient["comparison"][2];
    ensure(row3["lie_dim"] == 2 && row3["group_rank"] == 1 && row3["equal"] == false, || {
        format!("degree-3 comparison {row3}")
    })?;
    let free = racg_json(&["lie-dims", "-", "--max-degree", "8"], &k)?;
    let dims: Vec<u64> = serde_json::from_value(free["dims"].clone()).unwrap();
    ensure(dims == [2, 1, 2, 3, 6, 9, 18, 30], || format!("free dims {dims:?}"))?;
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("quotient 2,1,1,1,1,1,1,1; free 2,1,2,3,6,9,18,30; degree 3: 2 vs 1 ({t:.2?})"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut complexes: Vec<SimplicialComplex> = (1..=3).flat_map(SimplicialComplex::enumerate_all).collect();
    let small = complexes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = 0;
    while random < 24 {
        let k = SimplicialComplex::random(4, 0.6, &mut rng);
        if k.edges().len() >= 3 {
            complexes.push(k);
            random += 1;
        }
    }
    for k in &complexes {
        let oracle = racg_json(&["oracle", "-", "--class", "3"], k)?;
        let ranks = racg_json(&["ranks", "-"], k)?;
        let want = [ranks["r1"].clone(), ranks["r2"].clone(), ranks["r3"].clone()];
        ensure(oracle["ranks"].as_array().unwrap() == &want, || {
            format!("{}: oracle {} vs theory {ranks}", one_line(k), oracle["ranks"])
        })?;
    }
    let disc3 = racg_json(&["oracle", "-", "--class", "3"], &SimplicialComplex::discrete(3))?;
    ensure(disc3["orders"][2] == 2048 && disc3["ranks"] == serde_json::json!([3, 3, 5]), || {
        format!("three points: {disc3}")
    })?;
    let t = within(Duration::from_secs(600), start)?;
    Ok(format!("{small} complexes on <= 3 vertices and {random} random on 4 agree; three points: 2048, (3,3,5) ({t:.2?})"))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for m in 1..=5 {
        for k in SimplicialComplex::enumerate_all(m) {
            let (g, h) = (gscox_generators(&k).len() as u64, h1_rank_rk(&k));
            ensure(g == h, || format!("{}: {g} generators, rank {h}", one_line(&k)))?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let k = SimplicialComplex::random(8, rng.gen_range(0.1..0.9), &mut rng);
        let (g, h) = (gscox_generators(&k).len() as u64, h1_rank_rk(&k));
        ensure(g == h, || format!("{}: {g} generators, rank {h}", one_line(&k)))?;
    }
    Ok(format!("{count} complexes on <= 5 vertices and 100 random on 8"))
}

fn criterion_5() -> Outcome {
    let boundary = parse_complex("3\n1 2\n1 3\n2 3\n").unwrap();
    let h1 = rk_homology(&boundary, 1).unwrap().total;
    let h2 = rk_homology(&boundary, 2).unwrap().total;
    ensure(h1.is_zero(), || format!("boundary triangle H1 = {h1}"))?;
    ensure(h2.free_rank == 1 && h2.torsion.is_empty(), || format!("boundary triangle H2 = {h2}"))?;
    let two = rk_homology(&SimplicialComplex::discrete(2), 1).unwrap().total;
    ensure(two.free_rank == 1 && two.torsion.is_empty(), || format!("two points H1 = {two}"))?;
    let mut tested = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let randoms = (0..30).map(|_| SimplicialComplex::random(7, rng.gen_range(0.2..0.8), &mut rng));
    for k in (1..=4).flat_map(SimplicialComplex::enumerate_all).chain(randoms) {
        let h = rk_homology(&k, 1).unwrap().total;
        ensure(h.torsion.is_empty(), || format!("{}: H1 = {h}", one_line(&k)))?;
        tested += 1;
    }
    Ok(format!("H1 = 0, H2 = Z for the boundary triangle; two points H1 = Z; H1 torsion-free on {tested} complexes"))
}

fn criterion_6() -> Outcome {
    let mut instances = 0;
    let mut complexes = 0;
    for k in (1..=3).flat_map(SimplicialComplex::enumerate_all) {
        let t = class_table(&k, 3, DEFAULT_COSET_LIMIT).map_err(|e| e.to_string())?;
        let r = check_proof_identities(&k, &t, 0, 50).unwrap();
        ensure(r.ok(), || format!("{}: {:?}", one_line(&k), r.failures))?;
        let ind = l3_independence(&k, &t).unwrap();
        let want = lcs_ranks(&k).r3 as usize;
        ensure(ind.ok() && ind.subgroup_order == 1 << want, || format!("{}: {ind:?}", one_line(&k)))?;
        instances += r.checked;
        complexes += 1;
    }
    Ok(format!("{instances} identity instances and independence on {complexes} complexes"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut engine = LieEngine::new();
    for _ in 0..1000 {
        let m = rng.gen_range(2..=4u8);
        let degs = loop {
            let d = [rng.gen_range(1..=6usize), rng.gen_range(1..=6), rng.gen_range(1..=6)];
            if d.iter().sum::<usize>() <= 8 {
                break d;
            }
        };
        let [x, y, z] = degs.map(|d| {
            let b = glie::lyndon_basis(m, d);
            LieElement::monomial(&b[rng.gen_range(0..b.len())])
        });
        let (xy, yz, zx) = (engine.bracket(&x, &y), engine.bracket(&y, &z), engine.bracket(&z, &x));
        let sum = engine.bracket(&xy, &z).add(&engine.bracket(&yz, &x)).add(&engine.bracket(&zx, &y));
        ensure(sum.is_zero(), || format!("Jacobi fails for {x}, {y}, {z}"))?;
    }
    let mut triples = 0;
    for _ in 0..25 {
        let m = rng.gen_range(2..=6);
        let k = SimplicialComplex::random(m, rng.gen_range(0.0..1.0), &mut rng);
        for _ in 0..40 {
            let [a, b, c] = std::array::from_fn(|_| {
                GroupWord::new((0..rng.gen_range(0..6)).map(|_| rng.gen_range(1..=m)).collect())
            });
            ensure(verify_hall_witt(&k, &a, &b, &c), || format!("Hall-Witt fails for {a}, {b}, {c} in {}", one_line(&k)))?;
            triples += 1;
        }
    }
    for m in 1..=4u8 {
        for d in 1..=10 {
            let n = glie::lyndon_words(m, d).len() as u64;
            ensure(n == witt_number(m as u64, d as u64), || format!("m={m} d={d}: {n} Lyndon words"))?;
        }
    }
    Ok(format!("Jacobi on 1000 triples, Hall-Witt on {triples} triples over 25 complexes, Lyndon counts for m <= 4, d <= 10"))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for m in 1..=4 {
        for k in SimplicialComplex::enumerate_all(m) {
            let h = glie::hilbert_series_check(&k, 6).map_err(|e| e.to_string())?;
            if let Some(d) = h.first_mismatch {
                return Err(format!(
                    "counterexample {}: degree {d} coefficient {} from dims vs {} from cliques",
                    one_line(&k),
                    h.from_dims[d],
                    h.from_cliques[d]
                ));
            }
            n += 1;
        }
    }
    Ok(format!("clique-polynomial identity through degree 6 on {n} complexes"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("paper examples of the degree-3 basis", criterion_1),
        ("two-point Lie algebra dimensions", criterion_2),
        ("oracle agreement at class 3", criterion_3),
        ("generator count = rank H1(R_K)", criterion_4),
        ("homology sanity", criterion_5),
        ("proof identities and degree-3 independence", criterion_6),
        ("algebra property suite", criterion_7),
        ("Hilbert series cross-check", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(3);
    }
}
