use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use finitest::catalog::TypeCatalog;
use finitest::compiler::{compile_hnf, sentence_to_hnf, CompileOptions, CompiledProperty};
use finitest::error::Error;
use finitest::graph::{ExplicitGraph, ExplicitOracle, NeighborOracle};
use finitest::harness::{
    certify_far, gen_family, run_experiment, ExperimentConfig, Family, FamilySpec, FarResult,
};
use finitest::logic::{eval_exact, parse_sentence, HnfFile};
use finitest::tester::{
    compile_tester, construct_member, derive_seed, run_single, run_union, CompiledUnit, Decision,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "finitest",
    version,
    about = "Compile counting-logic sentences over bounded-degree graphs with bounded \
             component size into constant-query property testers, and run them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate component and ball types of the class
    Types {
        #[arg(short)]
        c: u32,
        #[arg(short)]
        d: u32,
        /// List realizable rooted types at this radius instead
        #[arg(long)]
        radius: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a sentence or Hanf-normal-form file into templates
    Compile {
        /// Sentence in the textual grammar (guarded counting fragment)
        #[arg(long, conflicts_with = "hnf")]
        sentence: Option<PathBuf>,
        /// Hanf-normal-form JSON input
        #[arg(long)]
        hnf: Option<PathBuf>,
        #[arg(short)]
        c: u32,
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a sentence on a graph with the exact model checker
    Eval {
        #[arg(long)]
        sentence: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run the compiled tester against a graph or family
    Test {
        #[arg(long)]
        templates: PathBuf,
        #[arg(long, conflicts_with = "family")]
        graph: Option<PathBuf>,
        /// Family spec like EDGES:n=1000000 or FROM_CHV:chv=1+3
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        /// Inflate the type count in the sample-size formula
        #[arg(long)]
        assume_n_types: Option<u64>,
        /// Run a single unit instead of the amplified union
        #[arg(long)]
        unit: Option<usize>,
    },
    /// Generate a family instance as an explicit graph file
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<u64>,
        /// Component counts for FROM_CHV, e.g. 1+3
        #[arg(long)]
        chv: Option<String>,
        /// Mix weights for RANDOM_MIX, e.g. 0.5+0.5
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        c: u32,
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a member graph on exactly n vertices for one unit
    Plan {
        #[arg(long)]
        templates: PathBuf,
        #[arg(long)]
        unit: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify whether a family instance is epsilon-far from the property
    Certify {
        #[arg(long)]
        templates: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long)]
        epsilon: f64,
    },
    /// Sweep families, sizes and epsilons; emit a deterministic report
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in oracle cross-check suites
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err.downcast_ref::<Error>().map(Error::exit_code).unwrap_or(2);
            ExitCode::from(code as u8)
        }
    }
}

fn write_or_print(output: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{content}"),
    }
    Ok(())
}

fn load_property(path: &Path) -> anyhow::Result<(CompiledProperty, TypeCatalog)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let property = CompiledProperty::from_json(&text)?;
    let catalog = TypeCatalog::new(property.c, property.d)?;
    property.check_catalog(&catalog)?;
    Ok((property, catalog))
}

fn dispatch(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Types { c, d, radius, output } => {
            let catalog = TypeCatalog::new(c, d)?;
            let json = match radius {
                None => serde_json::to_string_pretty(&catalog.export())?,
                Some(r) => {
                    if r > catalog.radius() {
                        return Err(anyhow!(Error::Argument(format!(
                            "radius {r} exceeds the catalog radius {}",
                            catalog.radius()
                        ))));
                    }
                    #[derive(Serialize)]
                    struct SubBall {
                        code: String,
                        size: u32,
                        edges: Vec<(u32, u32)>,
                        root: u32,
                    }
                    let balls: Vec<SubBall> = catalog
                        .ball_types_at_radius(r)?
                        .into_iter()
                        .map(|(code, ball)| SubBall {
                            code: code.to_hex(),
                            size: ball.graph.vertex_count() as u32,
                            edges: ball.graph.edges(),
                            root: ball.root as u32,
                        })
                        .collect();
                    serde_json::to_string_pretty(&balls)?
                }
            };
            write_or_print(&output, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compile { sentence, hnf, c, d, output } => {
            let catalog = TypeCatalog::new(c, d)?;
            let opts = CompileOptions::default();
            let hnf_sentence = match (&sentence, &hnf) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let parsed = parse_sentence(&text)?;
                    sentence_to_hnf(&parsed, &catalog, &opts)?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    HnfFile::parse(&text)?.resolve(&catalog)?
                }
                _ => return Err(anyhow!("exactly one of --sentence or --hnf is required")),
            };
            let property = compile_hnf(&hnf_sentence, &catalog, &opts)?;
            write_or_print(&output, &property.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { sentence, graph } => {
            let sentence_text = std::fs::read_to_string(&sentence)
                .with_context(|| format!("reading {}", sentence.display()))?;
            let parsed = parse_sentence(&sentence_text)?;
            let graph_text = std::fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let (g, _) = ExplicitGraph::from_str_any(&graph_text)?;
            let verdict = eval_exact(&g, &parsed)?;
            println!("{verdict}");
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Test {
            templates,
            graph,
            family,
            epsilon,
            seed,
            trials,
            report,
            assume_n_types,
            unit,
        } => run_test(&templates, graph, family, epsilon, seed, trials, report, assume_n_types, unit),
        Command::Gen { family, n, chv, weights, seed, c, d, output } => {
            let catalog = TypeCatalog::new(c, d)?;
            let mut params = Vec::new();
            if let Some(n) = n {
                params.push(format!("n={n}"));
            }
            if let Some(chv) = chv {
                params.push(format!("chv={chv}"));
            }
            if let Some(w) = weights {
                params.push(format!("w={w}"));
            }
            if seed != 0 {
                params.push(format!("seed={seed}"));
            }
            let spec = if params.is_empty() {
                family.clone()
            } else {
                format!("{family}:{}", params.join(","))
            };
            let fam = gen_family(&FamilySpec::parse(&spec)?, &catalog)?;
            if fam.n() > 10_000_000 {
                return Err(anyhow!(Error::Resource(format!(
                    "refusing to materialize n = {}; use implicit families via `test --family`",
                    fam.n()
                ))));
            }
            let explicit = fam.materialize()?;
            if fam.padded > 0 {
                eprintln!("note: padded {} vertices to fit n exactly", fam.padded);
            }
            let is_json =
                output.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
            let content = if is_json { explicit.to_json(d) } else { explicit.to_text(d) };
            write_or_print(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plan { templates, unit, n, epsilon, output } => {
            let (property, catalog) = load_property(&templates)?;
            let units = compile_tester(
                &property,
                &catalog,
                epsilon,
                None,
                CompileOptions::default().unit_guard,
            )?;
            let picked = units
                .get(unit)
                .ok_or_else(|| anyhow!("unit {unit} out of range (have {})", units.len()))?;
            match construct_member(picked, n, &catalog)? {
                Some(g) => {
                    write_or_print(&output, &g.to_text(catalog.d()))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none: no member of unit {unit} has exactly {n} vertices");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Certify { templates, family, epsilon } => {
            let (property, catalog) = load_property(&templates)?;
            let units = compile_tester(
                &property,
                &catalog,
                epsilon,
                None,
                CompileOptions::default().unit_guard,
            )?;
            let fam = gen_family(&FamilySpec::parse(&family)?, &catalog)?;
            let result = certify_far(&fam.chv(), fam.n(), &units, &catalog, epsilon)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            match result {
                FarResult::Certified(c) if c.far => Ok(ExitCode::SUCCESS),
                _ => Ok(ExitCode::from(1)),
            }
        }
        Command::Experiment { config, output } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let parsed: ExperimentConfig = serde_json::from_str(&text)?;
            let templates_path = {
                let p = PathBuf::from(&parsed.templates);
                if p.is_relative() {
                    config.parent().unwrap_or(Path::new(".")).join(p)
                } else {
                    p
                }
            };
            let (property, catalog) = load_property(&templates_path)?;
            let started = std::time::Instant::now();
            let report = run_experiment(&parsed, &property, &catalog)?;
            eprintln!("experiment wall time: {:?}", started.elapsed());
            write_or_print(&output, &serde_json::to_string_pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => selftest(),
    }
}

enum GraphInput {
    Explicit(ExplicitGraph),
    Family(Family),
}

#[derive(Serialize)]
struct UnitReport {
    index: usize,
    rare: Vec<(usize, u64)>,
    frequent: Vec<finitest::tester::FrequentType>,
    divisor: Option<u64>,
    frobenius: Option<i64>,
    rare_budget: u64,
    fixed_budget: u64,
    n0: u64,
    q: u64,
    n_prime: i128,
}

#[derive(Serialize)]
struct TestReport {
    n: u64,
    epsilon: f64,
    seed: u64,
    trials: u64,
    accepts: u64,
    rejects: u64,
    not_in_class: u64,
    decision: String,
    queries_mean: f64,
    queries_max: u64,
    units: Vec<UnitReport>,
    trial_decisions: Vec<String>,
    /// Per-unit trial records of the first execution.
    first_trial: Vec<finitest::tester::TrialRecord>,
}

fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Accept => "accept",
        Decision::Reject => "reject",
        Decision::NotInClass => "not_in_class",
    }
}

#[allow(clippy::too_many_arguments)]
fn run_test(
    templates: &Path,
    graph: Option<PathBuf>,
    family: Option<String>,
    epsilon: f64,
    seed: u64,
    trials: u64,
    report: ReportFormat,
    assume_n_types: Option<u64>,
    unit: Option<usize>,
) -> anyhow::Result<ExitCode> {
    let (property, catalog) = load_property(templates)?;
    let units = compile_tester(
        &property,
        &catalog,
        epsilon,
        assume_n_types,
        CompileOptions::default().unit_guard,
    )?;

    let input = match (&graph, &family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            GraphInput::Explicit(ExplicitGraph::from_str_any(&text)?.0)
        }
        (None, Some(spec)) => GraphInput::Family(gen_family(&FamilySpec::parse(spec)?, &catalog)?),
        _ => return Err(anyhow!("exactly one of --graph or --family is required")),
    };
    let explicit_oracle;
    let oracle: &dyn NeighborOracle = match &input {
        GraphInput::Explicit(g) => {
            explicit_oracle = ExplicitOracle::new(g, catalog.d());
            &explicit_oracle
        }
        GraphInput::Family(f) => f,
    };
    let n = oracle.vertex_count();

    let selected: Option<&CompiledUnit> = match unit {
        Some(i) => Some(
            units.get(i).ok_or_else(|| anyhow!("unit {i} out of range (have {})", units.len()))?,
        ),
        None => None,
    };

    let mut accepts = 0u64;
    let mut rejects = 0u64;
    let mut not_in_class = 0u64;
    let mut total_queries = 0u64;
    let mut max_queries = 0u64;
    let mut trial_decisions = Vec::new();
    let mut first_trial = Vec::new();
    for t in 0..trials {
        let master = derive_seed(seed, 0, t);
        let before = oracle.queries();
        let verdict = match selected {
            Some(u) => run_single(u, oracle, &catalog, master)?,
            None => run_union(&units, oracle, &catalog, master)?,
        };
        let used = oracle.queries() - before;
        total_queries += used;
        max_queries = max_queries.max(used);
        match verdict.decision {
            Decision::Accept => accepts += 1,
            Decision::Reject => rejects += 1,
            Decision::NotInClass => not_in_class += 1,
        }
        trial_decisions.push(decision_name(verdict.decision).to_string());
        if t == 0 {
            first_trial = verdict.trials;
        }
    }

    let decision = if not_in_class > 0 {
        "not_in_class"
    } else if accepts * 2 > trials {
        "accept"
    } else {
        "reject"
    };
    let unit_reports: Vec<UnitReport> = units
        .iter()
        .map(|u| UnitReport {
            index: u.index,
            rare: u.rare.clone(),
            frequent: u.frequent.clone(),
            divisor: u.divisor,
            frobenius: u.frobenius,
            rare_budget: u.rare_budget,
            fixed_budget: u.fixed_budget,
            n0: u.n0,
            q: u.q,
            n_prime: n as i128 - u.rare_budget as i128 - u.fixed_budget as i128,
        })
        .collect();
    let test_report = TestReport {
        n,
        epsilon,
        seed,
        trials,
        accepts,
        rejects,
        not_in_class,
        decision: decision.to_string(),
        queries_mean: total_queries as f64 / trials.max(1) as f64,
        queries_max: max_queries,
        units: unit_reports,
        trial_decisions,
        first_trial,
    };
    match report {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&test_report)?),
        ReportFormat::Text => {
            println!("n = {n}, epsilon = {epsilon}, seed = {seed}, trials = {trials}");
            for u in &test_report.units {
                println!(
                    "unit {}: n0 = {}, q = {}, divisor = {:?}, frobenius = {:?}, n' = {}",
                    u.index, u.n0, u.q, u.divisor, u.frobenius, u.n_prime
                );
            }
            println!("accepts = {accepts}, rejects = {rejects}, not_in_class = {not_in_class}");
            println!(
                "queries: mean = {:.1}, max = {}",
                test_report.queries_mean, test_report.queries_max
            );
            println!("decision: {decision}");
        }
    }
    Ok(match decision {
        "accept" => ExitCode::SUCCESS,
        "not_in_class" => ExitCode::from(3),
        _ => ExitCode::from(1),
    })
}

fn selftest() -> anyhow::Result<ExitCode> {
    use finitest::numtheory::{conical_decompose, crt_solve, frobenius_multiple, Congruence};
    let mut failures = 0u32;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let cat21 = TypeCatalog::new(2, 1)?;
    check("catalog (2,1) has 2 component types", cat21.component_types().len() == 2);
    check("catalog (2,1) has 2 ball types", cat21.ball_type_count() == 2);
    let cat32 = TypeCatalog::new(3, 2)?;
    check("catalog (3,2) has 4 component types", cat32.component_types().len() == 4);
    check("catalog (3,2) has 5 ball types", cat32.ball_type_count() == 5);

    check("frobenius {3,5} = 7", frobenius_multiple(&[3, 5])? == 7);
    check("frobenius {6,10} = 14", frobenius_multiple(&[6, 10])? == 14);
    check("frobenius {1,4} sentinel", frobenius_multiple(&[1, 4])? == -1);

    // Gap structure against the decomposition DP on small weight sets.
    let mut frob_ok = true;
    let pool: Vec<u64> = (2..=9).collect();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            for k in j..pool.len() {
                let ws = [pool[i], pool[j], pool[k]];
                let f = frobenius_multiple(&ws)?;
                if f >= 0 && conical_decompose(f as u64, &ws)?.is_some() {
                    frob_ok = false;
                }
                let g = finitest::numtheory::gcd_many(&ws)?;
                for step in 1..=10i64 {
                    let target = f + step * g as i64;
                    if target >= 0 && conical_decompose(target as u64, &ws)?.is_none() {
                        frob_ok = false;
                    }
                }
            }
        }
    }
    check("frobenius gap structure on {2..9} triples", frob_ok);

    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut crt_ok = true;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=4);
        let sys: Vec<Congruence> = (0..len)
            .map(|_| {
                let m = rng.gen_range(1..=30u64);
                Congruence::new(rng.gen_range(0..m), m).unwrap()
            })
            .collect();
        let lcm =
            finitest::numtheory::lcm_many(&sys.iter().map(|c| c.modulus).collect::<Vec<_>>())?;
        let scan = (0..lcm).find(|&x| sys.iter().all(|c| c.holds(x)));
        match (scan, crt_solve(&sys)?) {
            (None, None) => {}
            (Some(x), Some(c)) if c.residue == x && c.modulus == lcm => {}
            _ => crt_ok = false,
        }
    }
    check("crt agrees with exhaustive scan on 1000 systems", crt_ok);

    // Census round trip on random small class members.
    let mut census_ok = true;
    for _ in 0..30 {
        let z1 = rng.gen_range(0..6u64);
        let z2 = rng.gen_range(0..6u64);
        let fam = gen_family(&FamilySpec::FromChv { counts: vec![z1, z2] }, &cat21)?;
        let g = fam.materialize()?;
        let direct = finitest::catalog::chv(&g, &cat21)?;
        let via_balls =
            finitest::catalog::bhv_to_chv(&finitest::catalog::bhv(&g, &cat21)?, &cat21)?;
        if direct != via_balls || direct.0 != vec![z1, z2] {
            census_ok = false;
        }
    }
    check("ball census converts to component census", census_ok);

    if failures == 0 {
        println!("selftest: all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("selftest: {failures} check(s) failed");
        Ok(ExitCode::from(1))
    }
}
