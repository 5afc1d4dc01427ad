//! `racg`: lower central series invariants of right-angled Coxeter groups.

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use racg_lcs::glie::{self, LieError, PhiRow, RelationError};
use racg_lcs::homology::{self, HomologyError};
use racg_lcs::lcs::{self, BasisElement};
use racg_lcs::oracle::{self, OracleError, PresentationOptions};
use racg_lcs::verify::{self, Outcome, VerifyOptions};
use racg_lcs::{parse_complex, ComplexError, SimplicialComplex, Strategy};

#[derive(Parser)]
#[command(name = "racg", version, about = "Lower central series of right-angled Coxeter groups")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks r1, r2, r3 of the first three lower central series quotients.
    Ranks { complex: PathBuf },
    /// Generators of the commutator subgroup.
    Generators { complex: PathBuf },
    /// Basis of the degree-d quotient (d = 1, 2, 3).
    Basis {
        complex: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        degree: u32,
    },
    /// Homology of the real moment-angle complex.
    Homology {
        complex: PathBuf,
        /// Homological degree.
        #[arg(long = "k")]
        degree: u64,
        /// List the contributing full subcomplexes.
        #[arg(long)]
        report: bool,
    },
    /// Graded dimensions of the graph Lie algebra over GF(2), optionally modulo relations.
    LieDims {
        complex: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        /// File with one homogeneous relation per line, e.g. `[1,2,1] + [1,2,2]`.
        #[arg(long, conflicts_with = "rc2point")]
        relations: Option<PathBuf>,
        /// Use the built-in relations for two disjoint points.
        #[arg(long)]
        rc2point: bool,
        /// Compare with the group ranks in degrees up to 3.
        #[arg(long)]
        compare: bool,
    },
    /// Coset enumeration of the class-c quotient and the ranks it implies.
    Oracle {
        complex: PathBuf,
        #[arg(long)]
        class: u32,
        #[arg(long, default_value_t = oracle::DEFAULT_COSET_LIMIT)]
        coset_limit: usize,
        /// Check the commutator identities of the degree-3 argument (class 3).
        #[arg(long)]
        check_identities: bool,
        /// Check that the degree-3 basis is independent (class 3).
        #[arg(long)]
        check_independence: bool,
        /// Reduce commutator relators to normal form and drop redundant ones.
        #[arg(long)]
        prune: bool,
        /// Permit class 4 for two generators.
        #[arg(long)]
        allow_class4: bool,
        /// Random instances per sampled identity.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run every cross-check on one complex.
    Verify {
        complex: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_COSET_LIMIT)]
        coset_limit: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

/// Failure classes, mapped to exit statuses 1, 2 and 3.
enum Failure {
    Input(String),
    Guard(String),
    Discrepancy(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Discrepancy(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Guard(m) => write!(f, "aborted: {m}"),
            Failure::Discrepancy(m) => write!(f, "DISCREPANCY: {m}"),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RelationError> for Failure {
    fn from(e: RelationError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        match e {
            LieError::TooLarge { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::BadDegree(_) => Failure::Input(e.to_string()),
            _ => Failure::Guard(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CosetLimit { .. } => Failure::Guard(e.to_string()),
            OracleError::NotPowerOfTwo { .. } | OracleError::OrdersNotIncreasing { .. } => {
                Failure::Discrepancy(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Ctx {
    json: bool,
    seed: u64,
    strategy: Strategy,
}

impl Ctx {
    /// Sorted keys, so reparsing and reprinting gives the same bytes.
    fn print_json<T: Serialize>(&self, value: &T) {
        let v = serde_json::to_value(value).expect("serializable");
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    parse_complex(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}

fn strategy_for(threads: Option<u32>) -> Result<Strategy, Failure> {
    if threads == Some(1) {
        return Ok(Strategy::Sequential);
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure::Input(format!("cannot start {n} threads: {e}")))?;
    }
    Ok(Strategy::default())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Ctx { json: cli.json, seed: cli.seed, strategy: strategy_for(cli.threads)? };
    match cli.command {
        Command::Ranks { complex } => cmd_ranks(&ctx, &load_complex(&complex)?),
        Command::Generators { complex } => cmd_generators(&ctx, &load_complex(&complex)?),
        Command::Basis { complex, degree } => cmd_basis(&ctx, &load_complex(&complex)?, degree),
        Command::Homology { complex, degree, report } => cmd_homology(&ctx, &load_complex(&complex)?, degree, report),
        Command::LieDims { complex, max_degree, relations, rc2point, compare } => {
            let k = load_complex(&complex)?;
            let rels = match (relations, rc2point) {
                (Some(path), _) => glie::parse_relations(&read_text(&path)?, k.m())?,
                (None, true) if k.m() == 2 => glie::rc2point_relations(max_degree),
                (None, true) => return Err(Failure::Input("--rc2point needs a complex on 2 vertices".into())),
                (None, false) => Vec::new(),
            };
            cmd_lie_dims(&ctx, &k, &rels, max_degree, compare)
        }
        Command::Oracle { complex, class, coset_limit, check_identities, check_independence, prune, allow_class4, samples } => {
            let opts = OracleArgs {
                class,
                coset_limit,
                check_identities,
                check_independence,
                presentation: PresentationOptions { prune, allow_class4 },
                samples,
            };
            cmd_oracle(&ctx, &load_complex(&complex)?, &opts)
        }
        Command::Verify { complex, coset_limit, samples } => {
            let opts = VerifyOptions { coset_limit, samples, seed: ctx.seed, strategy: ctx.strategy, ..Default::default() };
            cmd_verify(&ctx, &load_complex(&complex)?, &opts)
        }
    }
}

fn cmd_ranks(ctx: &Ctx, k: &SimplicialComplex) -> Result<(), Failure> {
    let r = lcs::lcs_ranks(k);
    if ctx.json {
        ctx.print_json(&r);
    } else {
        println!("{r}");
    }
    Ok(())
}

#[derive(Serialize)]
struct GeneratorsOut {
    count: usize,
    generators: Vec<lcs::GeneratorDescriptor>,
}

fn cmd_generators(ctx: &Ctx, k: &SimplicialComplex) -> Result<(), Failure> {
    let generators = lcs::gscox_generators_with(k, ctx.strategy);
    if ctx.json {
        ctx.print_json(&GeneratorsOut { count: generators.len(), generators });
    } else {
        for g in &generators {
            println!("{g}");
        }
    }
    Ok(())
}

fn cmd_basis(ctx: &Ctx, k: &SimplicialComplex, degree: u32) -> Result<(), Failure> {
    let basis: Vec<BasisElement> = lcs::lrck_basis(k, degree).map_err(|e| Failure::Input(e.to_string()))?;
    if ctx.json {
        ctx.print_json(&basis);
    } else {
        for b in &basis {
            println!("{b}");
        }
    }
    Ok(())
}

fn cmd_homology(ctx: &Ctx, k: &SimplicialComplex, degree: u64, report: bool) -> Result<(), Failure> {
    let r = homology::rk_homology_with(k, degree, homology::DEFAULT_SUBSET_CAP, ctx.strategy)?;
    if ctx.json {
        ctx.print_json(&r);
        return Ok(());
    }
    println!("H_{degree}(R_K) = {}", r.total);
    if report {
        for c in &r.contributions {
            let g = homology::HomologyGroup { free_rank: c.rank, torsion: c.torsion.clone() };
            println!("  J = {}: {g}", c.subset);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct LieDimsOut {
    dims: glie::GradedDims,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Vec<PhiRow>>,
}

fn cmd_lie_dims(
    ctx: &Ctx,
    k: &SimplicialComplex,
    rels: &[glie::Relation],
    max_degree: usize,
    compare: bool,
) -> Result<(), Failure> {
    let dims = glie::quotient_dims(k, rels, max_degree)?;
    // The comparison is against the graph Lie algebra itself, not the quotient.
    let comparison = compare.then(|| glie::phi_comparison(k, max_degree.min(3))).transpose()?;
    if let Some(rows) = &comparison {
        if let Some(bad) = rows.iter().find(|r| !r.surjective || (r.degree <= 2 && !r.equal)) {
            return Err(Failure::Discrepancy(format!(
                "degree {}: graph Lie algebra dimension {} against group rank {}",
                bad.degree, bad.lie_dim, bad.group_rank
            )));
        }
    }
    if ctx.json {
        ctx.print_json(&LieDimsOut { dims, comparison });
        return Ok(());
    }
    println!("dims: {dims}");
    for r in comparison.iter().flatten() {
        let rel = if r.equal { "=" } else { ">" };
        println!("  degree {}: dim L_K = {} {rel} r{} = {}", r.degree, r.lie_dim, r.degree, r.group_rank);
    }
    Ok(())
}

struct OracleArgs {
    class: u32,
    coset_limit: usize,
    check_identities: bool,
    check_independence: bool,
    presentation: PresentationOptions,
    samples: usize,
}

#[derive(Serialize)]
struct OracleOut {
    orders: Vec<usize>,
    ranks: Vec<u32>,
    identities_ok: Option<bool>,
    independence_ok: Option<bool>,
}

fn cmd_oracle(ctx: &Ctx, k: &SimplicialComplex, a: &OracleArgs) -> Result<(), Failure> {
    if (a.check_identities || a.check_independence) && a.class != 3 {
        return Err(Failure::Input("identity and independence checks need --class 3".into()));
    }
    let top = if a.presentation.allow_class4 { 4 } else { oracle::MAX_CLASS };
    if a.class == 0 || a.class > top {
        return Err(OracleError::ClassOutOfRange(a.class).into());
    }
    let tables = ctx.strategy.map_range(a.class as u64, |c| {
        let p = oracle::class_presentation_with(k, c as u32 + 1, a.presentation)?;
        oracle::todd_coxeter(&p, a.coset_limit)
    });
    let tables = tables.into_iter().collect::<Result<Vec<_>, _>>()?;
    let orders: Vec<usize> = tables.iter().map(|t| t.order()).collect();
    let ranks = oracle::ranks_from_orders(&orders)?;

    let mut problems = Vec::new();
    let theory = lcs::lcs_ranks(k).as_array();
    for (d, (&got, &want)) in ranks.ranks.iter().zip(&theory).enumerate() {
        if got as u64 != want {
            problems.push(format!("r{} = {got} by enumeration but {want} by theory", d + 1));
        }
    }
    let last = tables.last().expect("class >= 1");
    let identities_ok = if a.check_identities {
        let r = oracle::check_proof_identities(k, last, ctx.seed, a.samples)?;
        problems.extend(r.failures.iter().map(|f| format!("{} fails at {}", f.identity, f.instance)));
        Some(r.ok())
    } else {
        None
    };
    let independence_ok = if a.check_independence {
        let r = oracle::l3_independence(k, last)?;
        problems.extend(r.dependent.iter().map(|d| format!("{d} is dependent")));
        problems.extend(r.not_elementary_abelian.iter().cloned());
        Some(r.ok())
    } else {
        None
    };

    if ctx.json {
        ctx.print_json(&OracleOut { orders, ranks: ranks.ranks.clone(), identities_ok, independence_ok });
    } else {
        for (c, o) in orders.iter().enumerate() {
            println!("class {}: order {o}", c + 1);
        }
        let r: Vec<String> = ranks.ranks.iter().map(u32::to_string).collect();
        println!("ranks: {}", r.join(","));
        if let Some(ok) = identities_ok {
            println!("identities: {}", if ok { "ok" } else { "FAILED" });
        }
        if let Some(ok) = independence_ok {
            println!("independence: {}", if ok { "ok" } else { "FAILED" });
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Discrepancy(problems.join("; ")))
    }
}

fn cmd_verify(ctx: &Ctx, k: &SimplicialComplex, opts: &VerifyOptions) -> Result<(), Failure> {
    let report = verify::verify(k, opts);
    if ctx.json {
        ctx.print_json(&report);
    } else {
        for c in &report.checks {
            let tag = match c.outcome {
                Outcome::Pass => "PASS ",
                Outcome::Fail => "FAIL ",
                Outcome::Aborted => "ABORT",
            };
            println!("{tag}  {}: {}", c.name, c.detail);
        }
    }
    let names = |o: Outcome| -> Vec<&str> {
        report.checks.iter().filter(|c| c.outcome == o).map(|c| c.name.as_str()).collect()
    };
    if report.has_failure() {
        Err(Failure::Discrepancy(names(Outcome::Fail).join("; ")))
    } else if report.has_abort() {
        Err(Failure::Guard(names(Outcome::Aborted).join("; ")))
    } else {
        Ok(())
    }
}
