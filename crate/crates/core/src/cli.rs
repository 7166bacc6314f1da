//! The `ftmv` command line.
//!
//! Exit codes: 0 success, 1 failed verification / cross-check mismatch /
//! solver stopped by its time limit, 2 bad usage or unusable input.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::formulas::{evaluate, mu_tree, table1_row, Family, FormulaAnswer, FormulaQuery, TABLE1};
use crate::generators::{generate, GeneratorSpec};
use crate::graph::{write_graph, Graph, VertexSet};
use crate::reduction::build_reduction;
use crate::solver::{solve, zarankiewicz_z22, SolveConfig};
use crate::visibility::is_ftmv_set;

#[derive(Debug, Parser)]
#[command(name = "ftmv", version, about = "k-fault-tolerant mutual-visibility toolkit")]
pub struct Cli {
    /// Read and print vertex ids starting at 1 instead of 0.
    #[arg(long, global = true)]
    pub one_based: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph in the `ftmv-graph 1` format.
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute mu^k exactly.
    Solve {
        spec: String,
        #[arg(short)]
        k: usize,
        /// Seconds before giving up with a lower bound.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a vertex set is k-ftmv.
    Verify {
        spec: String,
        #[arg(short)]
        k: usize,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<usize>,
        #[arg(long)]
        certificates: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closed form: path N, cycle N, tree LEAVES, grid M N,
    /// cylinder M N, torus M N, hamming M N, direct_complete M N.
    Formula {
        family: String,
        params: Vec<usize>,
        #[arg(short)]
        k: usize,
    },
    /// Compare the closed form with the solver.
    Crosscheck {
        spec: String,
        #[arg(short)]
        k: usize,
    },
    /// Build the gadget graph for an independent-set instance.
    Reduce {
        spec: String,
        #[arg(short)]
        t: usize,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recompute the K_m x K_n reference table with the solver.
    Table1 {
        /// Rows such as 3x3,4x5 (default: all).
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print z(M,N;2,2).
    Zarankiewicz { m: usize, n: usize },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    shift: usize,
}

impl Ctx<'_> {
    fn show(&self, v: usize) -> usize {
        v + self.shift
    }

    fn show_set(&self, s: &VertexSet) -> Vec<usize> {
        s.iter().map(|v| self.show(v)).collect()
    }

    fn braces(&self, s: &VertexSet) -> String {
        let items: Vec<String> = self.show_set(s).iter().map(ToString::to_string).collect();
        format!("{{{}}}", items.join(","))
    }

    fn json(&mut self, v: Value) -> Outcome {
        writeln!(self.out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        Ok(())
    }
}

fn load(spec: &str) -> std::result::Result<(GeneratorSpec, Graph), Failure> {
    let parsed: GeneratorSpec = spec.parse()?;
    let g = generate(&parsed)?;
    Ok((parsed, g))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { out, shift: usize::from(cli.one_based) };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                let _ = writeln!(err, "{msg}");
            }
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::Gen { spec, output } => {
            let (_, g) = load(&spec)?;
            let text = write_graph(&g);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => write!(ctx.out, "{text}")?,
            }
            Ok(())
        }
        Command::Solve { spec, k, time_limit, workers, witness, json } => {
            let (_, g) = load(&spec)?;
            let mut cfg = SolveConfig::new(k).workers(workers);
            if let Some(secs) = time_limit {
                let limit = Duration::try_from_secs_f64(secs)
                    .map_err(|_| Failure::Usage(format!("invalid time limit {secs}")))?;
                cfg = cfg.time_limit(limit);
            }
            let r = solve(&g, &cfg)?;
            if json {
                let mut stats = serde_json::to_value(&r.stats).expect("serializable");
                stats["optimal"] = json!(r.optimal);
                let mut doc = json!({ "command": "solve", "input": spec, "k": k, "value": r.value, "stats": stats });
                if witness {
                    doc["witness"] = json!(ctx.show_set(&r.witness));
                }
                ctx.json(doc)?;
            } else {
                let rel = if r.optimal { "=" } else { ">=" };
                writeln!(ctx.out, "mu^{k} {rel} {}", r.value)?;
                if witness {
                    writeln!(ctx.out, "witness = {}", ctx.braces(&r.witness))?;
                }
            }
            if r.optimal {
                Ok(())
            } else {
                Err(Failure::Check("time limit reached; value is a lower bound".into()))
            }
        }
        Command::Verify { spec, k, set, certificates, json } => {
            let (_, g) = load(&spec)?;
            let mut x = VertexSet::new(g.order());
            for v in set {
                let id = v
                    .checked_sub(ctx.shift)
                    .filter(|&id| id < g.order())
                    .ok_or_else(|| Failure::Usage(format!("vertex {v} out of range")))?;
                x.insert(id);
            }
            let verdict = is_ftmv_set(&g, &x, k, certificates)?;
            let line = match verdict.failing_pair {
                None => "OK".to_string(),
                Some((u, v)) => format!(
                    "FAIL pair=({},{}) max_disjoint={}",
                    ctx.show(u),
                    ctx.show(v),
                    verdict.max_disjoint.unwrap_or(0)
                ),
            };
            if json {
                let mut doc = json!({
                    "command": "verify",
                    "input": spec,
                    "k": k,
                    "value": {
                        "ok": verdict.ok,
                        "failing_pair": verdict.failing_pair.map(|(u, v)| [ctx.show(u), ctx.show(v)]),
                        "max_disjoint": verdict.max_disjoint,
                    },
                    "witness": ctx.show_set(&x),
                });
                if let Some(certs) = &verdict.certificates {
                    let list: Vec<Value> = certs
                        .values()
                        .map(|c| {
                            let paths: Vec<Vec<usize>> =
                                c.paths.iter().map(|p| p.iter().map(|&v| ctx.show(v)).collect()).collect();
                            json!({ "pair": [ctx.show(c.pair.0), ctx.show(c.pair.1)], "paths": paths })
                        })
                        .collect();
                    doc["certificates"] = Value::Array(list);
                }
                ctx.json(doc)?;
            } else {
                writeln!(ctx.out, "{line}")?;
                if let Some(certs) = &verdict.certificates {
                    for c in certs.values() {
                        let paths: Vec<String> = c
                            .paths
                            .iter()
                            .map(|p| p.iter().map(|&v| ctx.show(v).to_string()).collect::<Vec<_>>().join("-"))
                            .collect();
                        writeln!(ctx.out, "({},{}): {}", ctx.show(c.pair.0), ctx.show(c.pair.1), paths.join(" "))?;
                    }
                }
            }
            if verdict.ok {
                Ok(())
            } else {
                Err(Failure::Check(String::new()))
            }
        }
        Command::Formula { family, params, k } => {
            let family: Family = family.parse()?;
            let answer = evaluate(&FormulaQuery { family, params, k })?;
            writeln!(ctx.out, "{answer}")?;
            Ok(())
        }
        Command::Crosscheck { spec, k } => {
            let (parsed, g) = load(&spec)?;
            let answer = formula_for(&parsed, &g, k)?;
            let r = solve(&g, &SolveConfig::new(k))?;
            writeln!(ctx.out, "formula: {answer} [{}]", answer.source)?;
            writeln!(ctx.out, "solver:  {}", r.value)?;
            if answer.value == Some(r.value) && r.optimal {
                writeln!(ctx.out, "MATCH")?;
                Ok(())
            } else {
                writeln!(ctx.out, "MISMATCH")?;
                Err(Failure::Check(String::new()))
            }
        }
        Command::Reduce { spec, t, k, output } => {
            let (_, g) = load(&spec)?;
            let r = build_reduction(&g, t, k)?;
            std::fs::write(&output, write_graph(&r.g_prime))?;
            let mut sidecar = output.clone().into_os_string();
            sidecar.push(".roles");
            let roles: String =
                r.roles.iter().enumerate().map(|(v, role)| format!("{} {role}\n", ctx.show(v))).collect();
            std::fs::write(PathBuf::from(sidecar), roles)?;
            writeln!(ctx.out, "t' = {}", r.t_prime)?;
            Ok(())
        }
        Command::Table1 { rows, json } => {
            let wanted: Vec<(usize, usize)> = if rows.is_empty() {
                TABLE1.iter().map(|&(m, n, _)| (m, n)).collect()
            } else {
                rows.iter().map(|r| parse_row(r)).collect::<std::result::Result<_, _>>()?
            };
            let mut report = Vec::new();
            let mut all_ok = true;
            for (m, n) in wanted {
                let expected = table1_row(m, n).expect("validated");
                let g = generate(&GeneratorSpec::DirectComplete(m, n))?;
                let mut computed = Vec::with_capacity(expected.len());
                for k in 0..expected.len() {
                    let mut cfg = SolveConfig::new(k);
                    cfg.assume_vertex_transitive = true;
                    computed.push(solve(&g, &cfg)?.value);
                }
                let ok = computed == expected;
                all_ok &= ok;
                let fmt = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                if !json {
                    if ok {
                        writeln!(ctx.out, "K{m}xK{n}: {}  OK", fmt(&computed))?;
                    } else {
                        writeln!(ctx.out, "K{m}xK{n}: {}  MISMATCH expected {}", fmt(&computed), fmt(expected))?;
                    }
                }
                report.push(json!({ "row": format!("{m}x{n}"), "expected": expected, "computed": computed, "ok": ok }));
            }
            if json {
                let input = if rows.is_empty() { "all".to_string() } else { rows.join(",") };
                ctx.json(json!({ "command": "table1", "input": input, "k": null, "value": report }))?;
            }
            if all_ok {
                Ok(())
            } else {
                Err(Failure::Check(String::new()))
            }
        }
        Command::Zarankiewicz { m, n } => {
            writeln!(ctx.out, "{}", zarankiewicz_z22(m, n)?)?;
            Ok(())
        }
    }
}

fn parse_row(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("table rows look like 3x4 with 3 <= m, n <= 5, got `{s}`"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    let (m, n): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let (m, n) = (m.min(n), m.max(n));
    table1_row(m, n).ok_or_else(bad)?;
    Ok((m, n))
}

fn formula_for(spec: &GeneratorSpec, g: &Graph, k: usize) -> std::result::Result<FormulaAnswer, Failure> {
    use GeneratorSpec::*;
    let q = |family, params: Vec<usize>| evaluate(&FormulaQuery { family, params, k });
    let answer = match *spec {
        Path(n) => q(Family::Path, vec![n])?,
        Cycle(n) => q(Family::Cycle, vec![n])?,
        Grid(m, n) => q(Family::Grid, vec![m, n])?,
        Cylinder(m, n) => q(Family::Cylinder, vec![m, n])?,
        Torus(m, n) => q(Family::Torus, vec![m, n])?,
        Hamming(m, n) => q(Family::Hamming, vec![m, n])?,
        DirectComplete(m, n) => q(Family::DirectComplete, vec![m, n])?,
        _ if g.is_tree() && g.order() >= 2 => {
            FormulaAnswer::known(mu_tree(g, k)?, if k == 0 { "tree k=0: leaf count" } else { "tree k>=1" })
        }
        _ => return Err(Failure::Usage(format!("no closed form is known for `{spec}`"))),
    };
    Ok(answer)
}
