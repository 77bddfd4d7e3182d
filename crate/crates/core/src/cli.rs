//! Command-line front end. Every subcommand prints one JSON report on stdout.
//!
//! Exit codes: 0 solved or verified, 1 property violation, 2 usage or input
//! error, 3 size cap exceeded.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{self, GameValue, SearchLimits};
use crate::gen::{self, SeededRng, Shape, WeightMode};
use crate::graph::VertexSet;
use crate::instance::{Instance, StrategyTriple};
use crate::poly;
use crate::propagation::{check_trilevel_consistency, play};
use crate::reductions::{self, DigitLayout, OracleCaps, Reduction, SourceProblem, Target};
use crate::samples;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mcn", version, about = "Multilevel critical node workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a game or subgame on an instance file.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long)]
        instance: PathBuf,
        /// Fixed vaccinated vertices (ids or names, comma separated).
        #[arg(long = "D", value_delimiter = ',')]
        d: Vec<String>,
        /// Fixed attacked vertices (ids or names, comma separated).
        #[arg(long = "I", value_delimiter = ',')]
        i: Vec<String>,
        #[arg(long, default_value_t = exact::DEFAULT_MAX_PLAYS)]
        max_plays: u64,
    },
    /// Compile a source problem into a target instance.
    Reduce {
        #[arg(long = "from")]
        from: Reduction,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Include the digit table (b3cnf-tik only).
        #[arg(long)]
        table: bool,
    },
    /// Round-trip random sources through a reduction.
    Verify {
        #[arg(long)]
        reduction: Reduction,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Weights::Unit)]
        weights: Weights,
        #[arg(long, default_value_t = 9)]
        max_weight: u64,
    },
    /// Run a named timing suite.
    Bench {
        #[arg(long)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Protect,
    Attack,
    AttackProtect,
    VaccinationAttack,
    Mcn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Brute,
    Poly,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Weights {
    Unit,
    Random,
    Benefits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Samples,
    TreeDp,
    Oracle,
    Reductions,
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn report(code: i32, report: &Value) -> Self {
        CliOutcome {
            code,
            stdout: serde_json::to_string_pretty(report).expect("report serializes") + "\n",
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } | Error::CapExceeded(_) => EXIT_CAP,
            Error::Invariant(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        CliOutcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run_cli<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match cli.command {
        Command::Solve { problem, algo, instance, d, i, max_plays } => {
            cmd_solve(&echo, problem, algo, &instance, &d, &i, max_plays)
        }
        Command::Reduce { from, input, out, table } => cmd_reduce(&echo, from, &input, &out, table),
        Command::Verify { reduction, samples, seed } => cmd_verify(&echo, reduction, samples, seed),
        Command::Gen { shape, n, seed, weights, max_weight } => cmd_gen(shape, n, seed, weights, max_weight),
        Command::Bench { suite } => cmd_bench(&echo, suite),
    };
    result.unwrap_or_else(|e| CliOutcome::error(&e))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

/// Vertex ids, or names when the instance carries them.
fn parse_vertices(inst: &Instance, items: &[String]) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let v = match inst.vertex_named(item) {
            Some(v) => v,
            None => item
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("unknown vertex `{item}`")))?,
        };
        if v >= inst.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: inst.n() });
        }
        out.insert(v);
    }
    Ok(out)
}

/// A solution plus the algorithm that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub algorithm: &'static str,
    pub value: u64,
    pub witness: StrategyTriple,
    pub nodes: u64,
}

fn no_poly(problem: Problem) -> Error {
    Error::Precondition(format!("no polynomial algorithm for {problem:?}"))
}

/// The special-case algorithm for `problem`, if the instance fits it.
pub fn solve_poly(inst: &Instance, problem: Problem, d: &VertexSet, i: &VertexSet) -> Result<Solved> {
    match problem {
        Problem::Protect => {
            StrategyTriple::new(d.clone(), i.clone(), VertexSet::new()).validate(inst)?;
            if !d.is_empty() {
                return Err(Error::Precondition("polynomial protection takes no vaccination".into()));
            }
            if inst.graph().is_directed() {
                let g = poly::protect_arborescence_greedy(inst, i, inst.lambda)?;
                Ok(Solved {
                    algorithm: "arborescence-greedy",
                    value: g.saved,
                    witness: StrategyTriple::new(VertexSet::new(), i.clone(), g.protected),
                    nodes: inst.n() as u64,
                })
            } else {
                let t = poly::protect_tree_dp(inst, i, inst.lambda)?;
                Ok(Solved {
                    algorithm: "tree-dp",
                    value: t.saved,
                    witness: StrategyTriple::new(VertexSet::new(), i.clone(), t.protected),
                    nodes: inst.n() as u64,
                })
            }
        }
        Problem::Attack => {
            StrategyTriple::new(d.clone(), VertexSet::new(), VertexSet::new()).validate(inst)?;
            let (algorithm, plan) = if inst.is_unitary() {
                ("components-unitary", poly::attack_components_unitary(inst, d)?)
            } else {
                ("components-weighted", poly::attack_components_weighted(inst, d)?)
            };
            Ok(Solved {
                algorithm,
                value: inst.total_benefit() - plan.infected_benefit,
                witness: StrategyTriple::new(d.clone(), plan.attacked, VertexSet::new()),
                nodes: inst.n() as u64,
            })
        }
        _ => Err(no_poly(problem)),
    }
}

pub fn solve_brute(
    inst: &Instance,
    problem: Problem,
    d: &VertexSet,
    i: &VertexSet,
    limits: SearchLimits,
) -> Result<Solved> {
    let gv: GameValue = match problem {
        Problem::Protect => exact::best_protect_with(inst, d, i, limits)?,
        Problem::Attack => exact::best_attack_with(inst, d, limits)?,
        Problem::AttackProtect => exact::best_attack_protect_with(inst, d, limits)?,
        Problem::VaccinationAttack => exact::best_vaccination_attack_with(inst, limits)?,
        Problem::Mcn => exact::solve_mcn_with(inst, limits)?,
    };
    Ok(Solved {
        algorithm: "brute",
        value: gv.value,
        witness: gv.witness,
        nodes: gv.plays,
    })
}

/// Dispatches on `algo`; `auto` falls back to brute force when the
/// instance misses every polynomial precondition.
pub fn solve_with(
    inst: &Instance,
    problem: Problem,
    algo: Algo,
    d: &VertexSet,
    i: &VertexSet,
    limits: SearchLimits,
) -> Result<Solved> {
    match algo {
        Algo::Brute => solve_brute(inst, problem, d, i, limits),
        Algo::Poly => solve_poly(inst, problem, d, i),
        Algo::Auto => match solve_poly(inst, problem, d, i) {
            Err(Error::Precondition(_)) => solve_brute(inst, problem, d, i, limits),
            other => other,
        },
    }
}

fn labels(inst: &Instance, set: &VertexSet) -> Vec<String> {
    set.iter().map(|&v| inst.label(v)).collect()
}

fn cmd_solve(
    echo: &[String],
    problem: Problem,
    algo: Algo,
    path: &PathBuf,
    d: &[String],
    i: &[String],
    max_plays: u64,
) -> Result<CliOutcome> {
    let text = read(path)?;
    let inst = Instance::from_json(&text)?;
    let d = parse_vertices(&inst, d)?;
    let i = parse_vertices(&inst, i)?;
    let limits = SearchLimits { max_plays, ..SearchLimits::default() };
    let start = Instant::now();
    let solved = solve_with(&inst, problem, algo, &d, &i, limits)?;
    let wall = start.elapsed();

    let outcome = play(&inst, &solved.witness)?;
    let consistent = check_trilevel_consistency(&inst, &solved.witness, &outcome).is_consistent();
    let replay_ok = outcome.value == solved.value && consistent;
    let w = &solved.witness;
    let report = json!({
        "command": echo,
        "instance_sha256": sha256_hex(text.as_bytes()),
        "problem": format!("{problem:?}"),
        "algorithm": solved.algorithm,
        "value": solved.value,
        "witness": { "D": w.d, "I": w.i, "P": w.p },
        "witness_labels": {
            "D": labels(&inst, &w.d),
            "I": labels(&inst, &w.i),
            "P": labels(&inst, &w.p),
        },
        "saved": labels(&inst, &outcome.saved),
        "replay_value": outcome.value,
        "replay_ok": replay_ok,
        "wall_ms": wall.as_secs_f64() * 1e3,
        "nodes": solved.nodes,
    });
    Ok(CliOutcome::report(if replay_ok { EXIT_OK } else { EXIT_VIOLATION }, &report))
}

fn cmd_reduce(echo: &[String], from: Reduction, input: &PathBuf, out: &PathBuf, table: bool) -> Result<CliOutcome> {
    let text = read(input)?;
    let src = from.parse_source(&text)?;
    let start = Instant::now();
    let cert = from.apply(&src)?;
    let doc = cert.to_json();
    std::fs::write(out, &doc)?;
    let mut report = json!({
        "command": echo,
        "reduction": from.name(),
        "source_sha256": sha256_hex(text.as_bytes()),
        "target_sha256": sha256_hex(doc.as_bytes()),
        "out": out.display().to_string(),
        "wall_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    match &cert.target {
        Target::Game(g) => {
            report["vertices"] = json!(g.instance.n());
            report["arcs"] = json!(g.instance.graph().arc_count());
            report["question"] = g.question.to_json();
        }
        Target::Tik { instance, .. } => {
            report["items"] = json!(instance.items.len());
        }
    }
    if table {
        let SourceProblem::B3Cnf(f) = &src else {
            return Err(Error::Precondition("--table only applies to b3cnf-tik".into()));
        };
        report["table"] = json!(DigitLayout::new(f)?.table());
    }
    Ok(CliOutcome::report(EXIT_OK, &report))
}

fn cmd_verify(echo: &[String], reduction: Reduction, samples: usize, seed: u64) -> Result<CliOutcome> {
    let start = Instant::now();
    let report = reductions::verify_reduction(reduction, samples, seed, &OracleCaps::default())?;
    let first = report.first_disagreement().map(|o| json!({ "index": o.index, "seed": o.seed }));
    let doc = json!({
        "command": echo,
        "reduction": reduction.name(),
        "samples": samples,
        "seed": seed,
        "yes": report.yes_count(),
        "answer_mismatches": report.answer_mismatches(),
        "witness_failures": report.witness_failures(),
        "first_disagreement": first,
        "nodes": report.outcomes.iter().map(|o| o.plays).sum::<u64>(),
        "wall_ms": start.elapsed().as_secs_f64() * 1e3,
        "passed": report.passed(),
    });
    Ok(CliOutcome::report(if report.passed() { EXIT_OK } else { EXIT_VIOLATION }, &doc))
}

fn cmd_gen(shape: Shape, n: usize, seed: u64, weights: Weights, max: u64) -> Result<CliOutcome> {
    let mode = match weights {
        Weights::Unit => WeightMode::Unit,
        Weights::Random => WeightMode::Random { max },
        Weights::Benefits => WeightMode::Benefits { max },
    };
    let inst = gen::gen_random_instance(shape, n, seed, mode)?;
    Ok(CliOutcome {
        code: EXIT_OK,
        stdout: inst.to_json_pretty() + "\n",
        stderr: String::new(),
    })
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64() * 1e3))
}

fn cmd_bench(echo: &[String], suite: Suite) -> Result<CliOutcome> {
    let mut rows = Vec::new();
    match suite {
        Suite::Samples => {
            let inst = samples::sample_game();
            let (gv, ms) = timed(|| exact::solve_mcn(&inst))?;
            rows.push(json!({ "case": "sample-game mcn", "value": gv.value, "nodes": gv.plays, "wall_ms": ms }));
            let tree = samples::polytree_sample().with_budgets(0, 3, 2);
            let attack = samples::polytree_attack(&tree);
            let (gv, ms) = timed(|| exact::best_protect(&tree, &VertexSet::new(), &attack))?;
            rows.push(json!({ "case": "polytree protect", "value": gv.value, "nodes": gv.plays, "wall_ms": ms }));
        }
        Suite::TreeDp => {
            for n in [20usize, 40, 60] {
                let inst = gen::gen_random_instance(Shape::Tree, n, n as u64, WeightMode::Unit)?;
                let mut rng = SeededRng::new(n as u64);
                let mut order: Vec<usize> = (0..n).collect();
                rng.shuffle(&mut order);
                let attack: VertexSet = order.into_iter().take(5).collect();
                let (sol, ms) = timed(|| poly::protect_tree_dp(&inst, &attack, 10))?;
                rows.push(json!({ "case": format!("tree n={n} lambda=10 |I|=5"), "value": sol.saved, "wall_ms": ms }));
            }
        }
        Suite::Oracle => {
            let mut mismatches = 0;
            let (count, ms) = timed(|| {
                for seed in 0..50u64 {
                    let mut inst = gen::gen_random_instance(Shape::Tree, 10, seed, WeightMode::Unit)?;
                    inst.lambda = 2;
                    let attack: VertexSet = [0].into_iter().collect();
                    let dp = poly::protect_tree_dp(&inst, &attack, 2)?;
                    let bf = exact::best_protect(&inst, &VertexSet::new(), &attack)?;
                    mismatches += usize::from(dp.saved != bf.value);
                }
                Ok(50)
            })?;
            rows.push(json!({ "case": "tree-dp vs brute", "samples": count, "mismatches": mismatches, "wall_ms": ms }));
        }
        Suite::Reductions => {
            for r in Reduction::ALL {
                let (rep, ms) = timed(|| reductions::verify_reduction(r, 10, 1, &OracleCaps::default()))?;
                rows.push(json!({
                    "case": r.name(),
                    "answer_mismatches": rep.answer_mismatches(),
                    "witness_failures": rep.witness_failures(),
                    "wall_ms": ms,
                }));
            }
        }
    }
    let doc = json!({ "command": echo, "suite": format!("{suite:?}"), "results": rows });
    Ok(CliOutcome::report(EXIT_OK, &doc))
}
