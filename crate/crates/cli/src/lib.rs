//! The `abovelp` command line: solve, verify, bench and generate.
//!
//! Exit codes: 0 success, 1 failed verification or internal error, 2 no
//! solution within the budget, 64 usage error, 65 malformed input.

pub mod bench;
pub mod formats;
pub mod report;

use abovelp::bip2::solve::{solve_bip2, solve_bip2_auto};
use abovelp::bip2::{text as bip2_text, Bip2Error, Bip2Instance};
use abovelp::frontends::{self, Certificate, Cnf, ProblemInstance, ProblemSolution, WeightedGraph};
use abovelp::multiway::{is_multiway_cut, solve_multiway, solve_multiway_auto, MultiwayInstance};
use abovelp::oracle::gen;
use abovelp::vcal::{solve_above_lp, solve_auto, SearchStats};
use abovelp::vclp::{optimal_pair, VcInstance};
use abovelp::HalfInt;
use clap::{Args, Parser, Subcommand, ValueEnum};
use formats::DimacsGraph;
use report::{digest, half, Payload, RunReport, RunStats, Status};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "abovelp", version, about = "Fixed-parameter solvers above the LP bound")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Check a certificate stored in a JSON report.
    Verify(VerifyArgs),
    /// Time a fixed-gap instance family at growing sizes.
    Bench(BenchArgs),
    /// Write a random instance to stdout.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Vc,
    Oct,
    A2sat,
    Bip2,
    Multiway,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Vc => "vc",
            Problem::Oct => "oct",
            Problem::A2sat => "a2sat",
            Problem::Bip2 => "bip2",
            Problem::Multiway => "multiway",
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub problem: Problem,
    pub input: PathBuf,
    /// Budget above the LP value (`0.5` and `1/2` both work); for multiway,
    /// the cut size.
    #[arg(long, value_parser = parse_half, conflicts_with = "auto")]
    pub k: Option<HalfInt>,
    /// Grow the budget until a solution appears (the default without --k).
    #[arg(long)]
    pub auto: bool,
    /// Recheck the certificate independently and fail on a mismatch.
    #[arg(long)]
    pub verify: bool,
    /// Include search statistics.
    #[arg(long)]
    pub stats: bool,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Terminals for multiway, 1-indexed and comma separated; overrides
    /// `t` lines.
    #[arg(long, value_delimiter = ',')]
    pub terminals: Option<Vec<usize>>,
    /// Add wall time to the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub problem: Problem,
    pub input: PathBuf,
    /// A JSON report as written by `solve --json`.
    pub solution: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub terminals: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Bipartite graphs, gap 0.
    Bipartite,
    /// A triangle plus a disjoint path, gap ½.
    K3Path,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    pub family: Family,
    /// Comma separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    pub problem: Problem,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of terminals for multiway.
    #[arg(long, default_value_t = 3)]
    pub terminals: usize,
}

fn parse_half(s: &str) -> Result<HalfInt, String> {
    match HalfInt::parse(s) {
        Some(h) if h >= HalfInt::ZERO => Ok(h),
        _ => Err(format!("`{s}` is not a nonnegative multiple of 1/2")),
    }
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: message.into() + "\n" }
    }
}

/// Parses arguments (the first one is the program name) and runs.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::fail(code, text.trim_end())
            }
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Bench(a) => bench::cmd_bench(&a),
        Command::Generate(a) => cmd_generate(&a),
    }
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

/// An input parsed for one problem kind.
enum Input {
    Vc(WeightedGraph),
    Oct(WeightedGraph),
    A2sat(Cnf),
    Bip2(Bip2Instance),
    Multiway(MultiwayInstance),
}

fn parse_input(problem: Problem, text: &str, terminals: Option<&[usize]>) -> Result<Input, Outcome> {
    let bad = |e: bip2_text::ParseError| Outcome::fail(EXIT_PARSE, format!("parse error: {e}"));
    let graph = |text: &str| formats::parse_graph(text).map_err(bad);
    Ok(match problem {
        Problem::Vc => {
            let g = graph(text)?;
            Input::Vc(WeightedGraph { weights: g.weights, edges: g.edges })
        }
        Problem::Oct => {
            let g = graph(text)?;
            Input::Oct(WeightedGraph { weights: g.weights, edges: g.edges })
        }
        Problem::A2sat => Input::A2sat(formats::parse_cnf(text, Some(2)).map_err(bad)?),
        Problem::Bip2 => Input::Bip2(bip2_text::parse(text).map_err(bad)?),
        Problem::Multiway => {
            let g = graph(text)?;
            let n = g.weights.len();
            let ts = match terminals {
                Some(list) => {
                    if let Some(&t) = list.iter().find(|&&t| t == 0 || t > n) {
                        return Err(Outcome::fail(EXIT_USAGE, format!("terminal {t} is not a vertex id in 1..={n}")));
                    }
                    list.iter().map(|t| t - 1).collect()
                }
                None => g.terminals,
            };
            let inst = MultiwayInstance::new(n, g.edges, ts).map_err(|e| Outcome::fail(EXIT_USAGE, format!("invalid terminals: {e}")))?;
            Input::Multiway(inst)
        }
    })
}

fn vc_stats(s: &SearchStats) -> RunStats {
    RunStats { nodes: s.nodes, leaves: s.leaves, augmentations: s.augmentations, depth: s.max_depth as u64 }
}

fn vertices_payload(vs: &[usize]) -> Payload {
    Payload::Vertices(vs.iter().map(|v| v + 1).collect())
}

fn assignment_payload(a: &[bool]) -> Payload {
    Payload::Assignment(a.iter().enumerate().map(|(v, &b)| if b { v as i64 + 1 } else { -(v as i64) - 1 }).collect())
}

fn solution_payload(sol: &ProblemSolution) -> Payload {
    match &sol.certificate {
        Certificate::Vertices(v) => vertices_payload(v),
        Certificate::Assignment(a) => assignment_payload(a),
        Certificate::Edges(e) => Payload::Values(e.iter().map(|&i| i as i64 + 1).collect()),
    }
}

fn certificate_of(problem: Problem, payload: &Payload, vars: usize) -> Result<Certificate, String> {
    match (problem, payload) {
        (Problem::Vc | Problem::Oct, Payload::Vertices(v)) => {
            if v.contains(&0) {
                return Err("vertex ids start at 1".into());
            }
            Ok(Certificate::Vertices(v.iter().map(|x| x - 1).collect()))
        }
        (Problem::A2sat, Payload::Assignment(lits)) => {
            let mut a: Vec<Option<bool>> = vec![None; vars];
            for &l in lits {
                let v = l.unsigned_abs() as usize;
                if v == 0 || v > vars || a[v - 1].is_some() {
                    return Err(format!("literal {l} is out of range or repeats a variable"));
                }
                a[v - 1] = Some(l > 0);
            }
            a.into_iter().map(|x| x.ok_or_else(|| "assignment misses a variable".to_string())).collect::<Result<Vec<_>, _>>().map(Certificate::Assignment)
        }
        _ => Err("the solution payload does not fit this problem".into()),
    }
}

/// Solves a parsed input. `verify` reruns the independent checker.
fn solve_input(input: &Input, k: Option<HalfInt>, verify: bool, report: &mut RunReport) -> Result<(), String> {
    match input {
        Input::Vc(g) => {
            let inst = Arc::new(VcInstance::new(g.weights.clone(), g.edges.clone()).map_err(|e| e.to_string())?);
            let (x, y) = optimal_pair(&inst).map_err(|e| e.to_string())?;
            let (sol, stats, used) = match k {
                Some(k) => {
                    let (sol, stats) = solve_above_lp(&inst, (&x, &y), k).map_err(|e| e.to_string())?;
                    (sol, stats, k)
                }
                None => {
                    let out = solve_auto(&inst, (&x, &y)).map_err(|e| e.to_string())?;
                    (Some(out.solution), out.last, out.k)
                }
            };
            report.k = Some(half(used));
            report.lp = Some(half(x.value(&inst)));
            report.stats = Some(vc_stats(&stats));
            if let Some(sol) = sol {
                report.status = Status::Optimal;
                report.objective = Some(sol.weight);
                report.gap = Some(half(sol.gap()));
                report.solution = Some(vertices_payload(&sol.selected));
                if verify {
                    let p = ProblemInstance::VertexCover(g.clone());
                    let ps = ProblemSolution { certificate: Certificate::Vertices(sol.selected.clone()), objective: sol.weight };
                    report.verified = Some(frontends::verify(&p, &ps).is_ok());
                }
            } else {
                report.status = Status::NoSolutionWithinK;
            }
        }
        Input::Oct(_) | Input::A2sat(_) => {
            let p = match input {
                Input::Oct(g) => ProblemInstance::OddCycleTransversal(g.clone()),
                Input::A2sat(c) => ProblemInstance::Almost2Sat(c.clone()),
                _ => unreachable!(),
            };
            let (inst, ctx) = frontends::encode(&p).map_err(|e| e.to_string())?;
            let (sol, lp, stats, used) = match k {
                Some(k) => {
                    let out = solve_bip2(&inst, k).map_err(|e| e.to_string())?;
                    (out.solution, out.lp, out.stats, k)
                }
                None => {
                    let out = solve_bip2_auto(&inst).map_err(|e| e.to_string())?;
                    (Some(out.solution), out.lp, out.last, out.k)
                }
            };
            let lp = lp + HalfInt::from_int(ctx.offset);
            report.k = Some(half(used));
            report.lp = Some(half(lp));
            report.stats = Some(vc_stats(&stats));
            match sol {
                Some(s) => {
                    let ps = frontends::decode(&p, &s, &ctx);
                    report.status = Status::Optimal;
                    report.objective = Some(ps.objective);
                    report.gap = Some(half(HalfInt::from_int(ps.objective) - lp));
                    report.solution = Some(solution_payload(&ps));
                    if verify {
                        report.verified = Some(frontends::verify(&p, &ps).is_ok());
                    }
                }
                None => report.status = Status::NoSolutionWithinK,
            }
        }
        Input::Bip2(inst) => {
            let result = match k {
                Some(k) => solve_bip2(inst, k).map(|out| (out.solution, out.lp, out.stats, k)),
                None => solve_bip2_auto(inst).map(|out| (Some(out.solution), out.lp, out.last, out.k)),
            };
            let (sol, lp, stats, used) = match result {
                Err(Bip2Error::Infeasible) => {
                    report.status = Status::NoSolutionWithinK;
                    report.message = Some("the hard constraints have no integral solution".into());
                    return Ok(());
                }
                other => other.map_err(|e| e.to_string())?,
            };
            report.k = Some(half(used));
            report.lp = Some(half(lp));
            report.stats = Some(vc_stats(&stats));
            match sol {
                Some(s) => {
                    report.status = Status::Optimal;
                    report.objective = Some(s.objective);
                    report.gap = Some(half(HalfInt::from_int(s.objective) - lp));
                    if verify {
                        report.verified = Some(inst.evaluate(&s.x, 0).ok() == Some(s.objective));
                    }
                    report.solution = Some(Payload::Values(s.x));
                }
                None => report.status = Status::NoSolutionWithinK,
            }
        }
        Input::Multiway(inst) => {
            let (cut, stats, used) = match k {
                Some(k) => {
                    let out = solve_multiway(inst, k.floor() as usize);
                    (out.cut, Some(out.stats), Some(k.floor() as usize))
                }
                None => match solve_multiway_auto(inst) {
                    Some((k, out)) => (out.cut, Some(out.stats), Some(k)),
                    None => (None, None, None),
                },
            };
            report.k = used.map(|k| k.to_string());
            report.stats = stats.map(|s| RunStats { nodes: s.nodes, leaves: s.leaves, augmentations: s.augmentations, depth: s.depth as u64 });
            match cut {
                Some(cut) => {
                    report.status = Status::Optimal;
                    report.objective = Some(cut.len() as i64);
                    if verify {
                        report.verified = Some(is_multiway_cut(inst, &cut));
                    }
                    report.solution = Some(vertices_payload(&cut));
                }
                None => {
                    report.status = Status::NoSolutionWithinK;
                    if used.is_none() {
                        report.message = Some("two terminals are adjacent".into());
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn cmd_solve(a: &SolveArgs) -> Outcome {
    let text = match read(&a.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let input = match parse_input(a.problem, &text, a.terminals.as_deref()) {
        Ok(i) => i,
        Err(o) => return o,
    };
    if a.problem == Problem::Multiway && a.k.is_some_and(|k| !k.is_integral()) {
        return Outcome::fail(EXIT_USAGE, "the multiway budget must be an integer");
    }
    let mut report = RunReport::new(a.problem.name(), digest(text.as_bytes()));
    let start = Instant::now();
    let result = solve_input(&input, a.k, a.verify, &mut report);
    if a.timing {
        report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if !a.stats {
        report.stats = None;
    }
    let code = match result {
        Err(message) => {
            report.status = Status::Error;
            report.message = Some(message);
            EXIT_PARSE
        }
        Ok(()) if report.verified == Some(false) => {
            report.status = Status::Error;
            report.message = Some("independent verification failed".into());
            EXIT_FAILED
        }
        Ok(()) if report.status == Status::NoSolutionWithinK => EXIT_NO_SOLUTION,
        Ok(()) => EXIT_OK,
    };
    let stdout = if a.json { report.to_json() + "\n" } else { report.to_text() };
    Outcome { code, stdout, stderr: String::new() }
}

/// Checks a report's certificate against the input.
pub fn check_report(problem: Problem, input_text: &str, report: &RunReport, terminals: Option<&[usize]>) -> Result<i64, Vec<String>> {
    let input = parse_input(problem, input_text, terminals).map_err(|o| vec![o.stderr.trim_end().to_string()])?;
    if report.status != Status::Optimal {
        return Err(vec!["the report carries no certificate".into()]);
    }
    let (Some(payload), Some(objective)) = (&report.solution, report.objective) else {
        return Err(vec!["the report lacks a solution or objective".into()]);
    };
    let mut problems = Vec::new();
    if report.digest != digest(input_text.as_bytes()) {
        problems.push("the report was produced for a different input".to_string());
    }
    let checked = match (&input, payload) {
        (Input::Vc(g) | Input::Oct(g), _) => {
            let p = if problem == Problem::Vc { ProblemInstance::VertexCover(g.clone()) } else { ProblemInstance::OddCycleTransversal(g.clone()) };
            certificate_of(problem, payload, 0).map_err(|e| vec![e]).and_then(|c| frontends::verify(&p, &ProblemSolution { certificate: c, objective }))
        }
        (Input::A2sat(cnf), _) => {
            let p = ProblemInstance::Almost2Sat(cnf.clone());
            certificate_of(problem, payload, cnf.vars).map_err(|e| vec![e]).and_then(|c| frontends::verify(&p, &ProblemSolution { certificate: c, objective }))
        }
        (Input::Bip2(inst), Payload::Values(x)) => match inst.evaluate(x, 0) {
            Ok(v) if v == objective => Ok(v),
            Ok(v) => Err(vec![format!("claimed objective {objective} but the values cost {v}")]),
            Err(e) => Err(vec![e.to_string()]),
        },
        (Input::Multiway(inst), Payload::Vertices(v)) => {
            let cut: Vec<usize> = v.iter().map(|x| x.wrapping_sub(1)).collect();
            let mut errs = Vec::new();
            if !is_multiway_cut(inst, &cut) {
                errs.push("some pair of terminals stays connected, or the cut holds a terminal".into());
            }
            if cut.len() as i64 != objective {
                errs.push(format!("claimed objective {objective} but the cut has {} vertices", cut.len()));
            }
            if errs.is_empty() {
                Ok(objective)
            } else {
                Err(errs)
            }
        }
        _ => Err(vec!["the solution payload does not fit this problem".into()]),
    };
    match checked {
        Ok(v) if problems.is_empty() => Ok(v),
        Ok(_) => Err(problems),
        Err(mut e) => {
            e.extend(problems);
            Err(e)
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let (input, sol) = match (read(&a.input), read(&a.solution)) {
        (Ok(i), Ok(s)) => (i, s),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let report: RunReport = match serde_json::from_str(&sol) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_PARSE, format!("parse error: {}: line {}, column {}: {e}", a.solution.display(), e.line(), e.column())),
    };
    match check_report(a.problem, &input, &report, a.terminals.as_deref()) {
        Ok(v) => Outcome { code: EXIT_OK, stdout: format!("ok: objective {v}\n"), stderr: String::new() },
        Err(list) => {
            let code = if list.len() == 1 && list[0].starts_with("parse error") { EXIT_PARSE } else { EXIT_FAILED };
            Outcome { code, stdout: String::new(), stderr: list.iter().map(|l| format!("violation: {l}\n")).collect() }
        }
    }
}

pub fn cmd_generate(a: &GenerateArgs) -> Outcome {
    let mut rng = gen::rng(a.seed);
    let n = a.n.max(1);
    let text = match a.problem {
        Problem::Vc | Problem::Oct | Problem::Multiway => {
            let (weights, edges) = gen::random_weighted_graph(&mut rng, n, 2 * n, if a.problem == Problem::Multiway { 1 } else { 4 });
            let terminals = if a.problem == Problem::Multiway { gen::random_terminals(&mut rng, weights.len(), a.terminals.min(weights.len())) } else { Vec::new() };
            formats::write_graph(&DimacsGraph { weights, edges, terminals })
        }
        Problem::A2sat => {
            let clauses = gen::random_2cnf(&mut rng, n, 2 * n).into_iter().map(|c| c.to_vec()).collect();
            formats::write_cnf(&Cnf { vars: n, clauses })
        }
        Problem::Bip2 => match bip2_text::format(&gen::random_binary_bip2(&mut rng, n, 2 * n)) {
            Ok(t) => t,
            Err(e) => return Outcome::fail(EXIT_FAILED, e.to_string()),
        },
    };
    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
}
