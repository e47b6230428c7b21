use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diamwidth::atlas::{self, Diameter, Query, Relation};
use diamwidth::constructions::FamilySpec;
use diamwidth::containment::Mode;
use diamwidth::graph::io::labels_to_json;
use diamwidth::graph::{diameter, Distance};
use diamwidth::refuter::{self, RefutationOutcome, RefuteConfig, VOCABULARY_CAVEAT};
use diamwidth::width::{solve, Param};
use diamwidth::{Error, Graph};
use diamwidth_cli::experiment::{
    free_status, run_experiment, ExperimentPlan, Status, CHECK_BUDGET,
};
use diamwidth_cli::input::{parse_graph, render_graph, Format};
use diamwidth_cli::theorems::{theorem_registry, verify_theorem};
use serde::Serialize;

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

const REFUTE_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "diamwidth",
    version,
    about = "Width parameters of graph classes of bounded diameter"
)]
struct Cli {
    /// Node budget for searches; overrides each command's default.
    #[arg(long, global = true, env = "DIAMWIDTH_BUDGET")]
    budget: Option<u64>,
    /// Accepted for reproducible invocations; every command is already deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Accepted for reproducible invocations; every command is already deterministic.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Worker bound; the solvers currently run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphArgs {
    /// Family spec, e.g. `cycle:6` or `path:6 * complete:1`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    family: Option<FamilySpec>,
    /// Graph file; `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Input format; guessed from the file extension when absent.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a family member and print it.
    Construct {
        spec: FamilySpec,
        #[arg(long, default_value = "edges")]
        format: Format,
        /// Write vertex labels as JSON to this path.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check diameter and freeness claims; exit 1 if any fails.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        diameter: Option<u32>,
        #[arg(long)]
        max_diameter: Option<u32>,
        /// Forbidden subgraph (repeatable).
        #[arg(long)]
        free: Vec<FamilySpec>,
        #[arg(long)]
        induced_free: Vec<FamilySpec>,
        #[arg(long)]
        minor_free: Vec<FamilySpec>,
    },
    /// Exact width with certificate, as JSON.
    Width {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        param: Param,
        /// Vertex limit for exact search.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Classify a class of forbidden-pattern graphs of bounded diameter.
    Classify {
        /// Forbidden graph (repeatable; several only with `--relation minor`).
        #[arg(long, required = true)]
        forbidden: Vec<FamilySpec>,
        #[arg(long)]
        relation: Relation,
        #[arg(long)]
        param: Param,
        /// Diameter bound, or `inf`.
        #[arg(long)]
        d: Diameter,
        /// Print the full verdict with its rule trace.
        #[arg(long)]
        json: bool,
    },
    /// Count small connected graphs of a class and their largest width, as CSV.
    Census {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        forbidden: FamilySpec,
        #[arg(long, default_value = "subgraph")]
        relation: Relation,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        param: Param,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for a completion of an induced path avoiding C_{2r} with diameter at most d.
    Refute {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        l: usize,
        /// Witness cap; defaults to 3l/d.
        #[arg(long)]
        witnesses: Option<usize>,
        /// Continue from a saved search state.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Where to save the search state if the budget runs out.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Run a TOML experiment plan and write CSV.
    Experiment {
        plan: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the check bundle registered under an id and print a JSON report.
    VerifyTheorem {
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Convert between graph6 and edge lists.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        from: Option<Format>,
        #[arg(long)]
        to: Option<Format>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_text(p: &Path) -> Result<String, Error> {
    if p == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(p)?)
    }
}

fn write_out(p: Option<&Path>, text: &str) -> Result<(), Error> {
    match p {
        Some(p) if p != Path::new("-") => fs::write(p, text)?,
        _ => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

impl GraphArgs {
    fn load(&self) -> Result<Graph, Error> {
        if let Some(f) = &self.family {
            return f.build();
        }
        let p = self.input.as_deref().expect("clap requires a source");
        let fmt = self.format.unwrap_or_else(|| Format::from_path(p));
        parse_graph(&read_text(p)?, fmt)
    }
}

fn mode(r: Relation) -> Mode {
    match r {
        Relation::Induced => Mode::Induced,
        Relation::Subgraph => Mode::Subgraph,
        Relation::Minor => Mode::Minor,
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Budget => EXIT_BUDGET,
        Status::Fail | Status::Error => EXIT_CHECK,
    }
}

#[derive(Serialize)]
struct CheckLine {
    check: String,
    status: Status,
}

fn run(cli: Cli) -> Result<u8, Error> {
    let budget = cli.budget;
    match cli.cmd {
        Cmd::Construct {
            spec,
            format,
            labels,
            output,
        } => {
            let g = spec.build()?;
            if let Some(p) = labels {
                fs::write(p, labels_to_json(&g))?;
            }
            write_out(output.as_deref(), &render_graph(&g, format))?;
            Ok(0)
        }
        Cmd::Check {
            graph,
            diameter: want,
            max_diameter,
            free,
            induced_free,
            minor_free,
        } => {
            let g = graph.load()?;
            let diam = diameter(&g)?;
            let mut lines = Vec::new();
            let of = |ok: bool| if ok { Status::Pass } else { Status::Fail };
            if let Some(d) = want {
                lines.push(CheckLine {
                    check: format!("diameter=={d}"),
                    status: of(diam == Distance::Finite(d)),
                });
            }
            if let Some(d) = max_diameter {
                lines.push(CheckLine {
                    check: format!("diameter<={d}"),
                    status: of(diam.at_most(d)),
                });
            }
            let b = budget.unwrap_or(CHECK_BUDGET);
            for (m, tag, pats) in [
                (Mode::Subgraph, "free", &free),
                (Mode::Induced, "induced_free", &induced_free),
                (Mode::Minor, "minor_free", &minor_free),
            ] {
                for p in pats {
                    lines.push(CheckLine {
                        check: format!("{tag}:{p}"),
                        status: free_status(&g, p, m, b)?,
                    });
                }
            }
            let worst = lines.iter().fold(Status::Pass, |a, l| a.worse(l.status));
            #[derive(Serialize)]
            struct Report {
                vertices: usize,
                edges: usize,
                diameter: Distance,
                status: Status,
                checks: Vec<CheckLine>,
            }
            print_json(&Report {
                vertices: g.n(),
                edges: g.edge_count(),
                diameter: diam,
                status: worst,
                checks: lines,
            })?;
            Ok(status_code(worst))
        }
        Cmd::Width {
            graph,
            param,
            limit,
        } => {
            let g = graph.load()?;
            let r = solve(&g, param, limit)?;
            print_json(&r)?;
            Ok(if r.is_exact() { 0 } else { EXIT_BUDGET })
        }
        Cmd::Classify {
            forbidden,
            relation,
            param,
            d,
            json,
        } => {
            let q = Query {
                forbidden: forbidden
                    .iter()
                    .map(|f| f.build())
                    .collect::<Result<_, _>>()?,
                relation,
                parameter: param,
                d,
            };
            let v = atlas::classify_with_budget(&q, budget.unwrap_or(atlas::DEFAULT_BUDGET))?;
            if json {
                print_json(&v)?;
            } else {
                match &v.cite {
                    Some(c) => println!("{} [{c}]", v.answer),
                    None => println!("{}", v.answer),
                }
            }
            Ok(0)
        }
        Cmd::Census {
            n_max,
            forbidden,
            relation,
            d,
            param,
            output,
        } => {
            let rows = refuter::census(n_max, &forbidden.build()?, mode(relation), d, param)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| Error::Plan(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Plan(e.to_string()))?;
            write_out(output.as_deref(), &String::from_utf8_lossy(&bytes))?;
            Ok(0)
        }
        Cmd::Refute {
            r,
            d,
            l,
            witnesses,
            resume,
            state,
        } => {
            eprintln!("note: {VOCABULARY_CAVEAT}");
            let b = budget.unwrap_or(REFUTE_BUDGET);
            let out = match resume {
                Some(p) => {
                    let cp: refuter::Checkpoint = serde_json::from_str(&read_text(&p)?)?;
                    refuter::resume(&cp, b)?
                }
                None => {
                    let cfg = match witnesses {
                        Some(w) => RefuteConfig::with_witnesses(r, d, l, w)?,
                        None => RefuteConfig::new(r, d, l)?,
                    };
                    refuter::refute_with(&cfg, b)?
                }
            };
            print_json(&out)?;
            Ok(match &out {
                RefutationOutcome::BudgetExhausted { checkpoint, .. } => {
                    if let Some(p) = state {
                        fs::write(p, serde_json::to_string_pretty(checkpoint)?)?;
                    }
                    EXIT_BUDGET
                }
                _ => 0,
            })
        }
        Cmd::Experiment { plan, output } => {
            let p = ExperimentPlan::parse(&read_text(&plan)?)?;
            let report = run_experiment(&p)?;
            let target = output.or_else(|| p.output.as_ref().map(PathBuf::from));
            write_out(target.as_deref(), &report.to_csv()?)?;
            Ok(status_code(report.status()))
        }
        Cmd::VerifyTheorem { id, list } => {
            if list {
                for t in &theorem_registry().theorem {
                    println!("{}\t{}\t{}", t.id, t.cite, t.summary);
                }
                return Ok(0);
            }
            let report = verify_theorem(id.as_deref().expect("clap requires an id"))?;
            print_json(&report)?;
            Ok(status_code(report.status))
        }
        Cmd::Convert {
            input,
            output,
            from,
            to,
        } => {
            let g = parse_graph(
                &read_text(&input)?,
                from.unwrap_or_else(|| Format::from_path(&input)),
            )?;
            let text = render_graph(&g, to.unwrap_or_else(|| Format::from_path(&output)));
            write_out(Some(&output), &text)?;
            Ok(0)
        }
    }
}
