use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ilmt::census::{self, FourType};
use ilmt::edgelist::{self, GraphJson};
use ilmt::generator::MAX_NODES_ENV;
use ilmt::rational::RatioJson;
use ilmt::{
    embed, fixtures, props, pursuit, verify, GeneratingSequence, Generator, OrientedGraph,
    Tournament,
};

#[derive(Parser, Debug)]
#[command(name = "ilmt", version, about = "Iterated local model tournaments")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Node cap for generated tournaments (overrides ILMT_MAX_NODES).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Run {
    /// Edge-list file or builtin: d3, t3, edge, single, t4, winner, loser,
    /// mixed, linear:k, hero:i, fig2:G|H|T.
    #[arg(long)]
    base: String,
    /// Generating sequence over {0,1}, read as s(1), s(2), ...
    #[arg(long, default_value = "")]
    seq: String,
    /// Cycle the sequence literal this many times.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repeat: u64,
    /// Steps to take (default: the whole sequence).
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an iterate and print it.
    Generate {
        #[command(flatten)]
        run: Run,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        /// Use the oriented-graph variant.
        #[arg(long)]
        oriented: bool,
    },
    /// Count 3- or 4-node subtournaments of an iterate.
    Census {
        #[command(flatten)]
        run: Run,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        k: u8,
        /// Report 4-type proportions at every step against the Markov model.
        #[arg(long)]
        trace: bool,
    },
    /// Diameter, connectivity and domination of an iterate.
    Analyze {
        #[command(flatten)]
        run: Run,
        /// Also compute the chromatic number (exponential).
        #[arg(long)]
        chi: bool,
        /// Also compute the cop number (exponential).
        #[arg(long)]
        cop: bool,
    },
    /// Run a property battery.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Embed a target tournament into an iterate of the base.
    Embed {
        #[command(flatten)]
        run: Run,
        /// Edge-list file or builtin name.
        #[arg(long)]
        target: String,
        /// Always run the construction, even if the target already sits on
        /// the first nodes of the base.
        #[arg(long)]
        full: bool,
    },
    /// Cop number with a winning strategy.
    SolveCops {
        #[command(flatten)]
        run: Run,
        /// Decide this many cops instead of searching for the cop number.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
        /// Include the full strategy table.
        #[arg(long)]
        strategy: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edgelist,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Motifs,
    Quasirandom,
    Diameter,
    Connectivity,
    Domination,
    Cops,
    Coloring,
    Universality,
    Distinguish,
    All,
}

impl From<SuiteArg> for verify::Suite {
    fn from(s: SuiteArg) -> Self {
        use verify::Suite;
        match s {
            SuiteArg::Motifs => Suite::Motifs,
            SuiteArg::Quasirandom => Suite::Quasirandom,
            SuiteArg::Diameter => Suite::Diameter,
            SuiteArg::Connectivity => Suite::Connectivity,
            SuiteArg::Domination => Suite::Domination,
            SuiteArg::Cops => Suite::Cops,
            SuiteArg::Coloring => Suite::Coloring,
            SuiteArg::Universality => Suite::Universality,
            SuiteArg::Distinguish => Suite::Distinguish,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(ilmt::Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<ilmt::Error> for Failure {
    fn from(e: ilmt::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_cap() => 2,
            _ => 1,
        }
    }
}

/// What a command produced, and whether everything it checked held.
struct Output {
    text: String,
    verified: bool,
}

fn json_output(v: &impl serde::Serialize, verified: bool) -> Output {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    Output { text, verified }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// A path that exists is read as an edge list; anything else must be a
/// builtin name.
fn load_tournament(spec: &str) -> Result<Tournament, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(edgelist::parse_tournament(&read_file(path)?)?);
    }
    Ok(fixtures::named(spec)?)
}

fn load_oriented(spec: &str) -> Result<OrientedGraph, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(edgelist::parse_oriented(&read_file(path)?)?);
    }
    let t = fixtures::named(spec)?;
    Ok(OrientedGraph::build(t.n(), &t.arcs())?)
}

impl Run {
    /// The literal is cycled `--repeat` times, and further if `--steps`
    /// asks for more.
    fn sequence(&self) -> Result<(GeneratingSequence, usize), Failure> {
        let literal: GeneratingSequence = self.seq.parse()?;
        let steps = self.steps.unwrap_or(literal.len() * self.repeat as usize);
        if steps > 0 && literal.is_empty() {
            return Err(Failure::Usage(format!(
                "{steps} steps requested but --seq is empty"
            )));
        }
        let cycles = (self.repeat as usize).max(steps.div_ceil(literal.len().max(1)));
        Ok((literal.repeat(cycles), steps))
    }

    fn iterate(&self) -> Result<Tournament, Failure> {
        let g0 = load_tournament(&self.base)?;
        let (s, steps) = self.sequence()?;
        Ok(Generator::from_env().generate(&g0, &s, steps)?.0)
    }
}

fn cmd_generate(run: &Run, format: Format, oriented: bool) -> Result<Output, Failure> {
    let (s, steps) = run.sequence()?;
    let generator = Generator::from_env();
    let (n0, n, arcs, text) = if oriented {
        let g0 = load_oriented(&run.base)?;
        let (g, _) = generator.generate_oriented(&g0, &s, steps)?;
        (g0.n(), g.n(), g.arcs(), edgelist::write_oriented(&g))
    } else {
        let g0 = load_tournament(&run.base)?;
        let (g, _) = generator.generate(&g0, &s, steps)?;
        (g0.n(), g.n(), g.arcs(), edgelist::write_tournament(&g))
    };
    Ok(match format {
        Format::Edgelist => Output {
            text,
            verified: true,
        },
        Format::Json => json_output(&GraphJson { n, arcs }, true),
        Format::Dot => Output {
            text: edgelist::to_dot(n, &arcs, Some(&edgelist::clone_labels(n0, steps))),
            verified: true,
        },
    })
}

fn ratios_json(v: &[ilmt::Ratio]) -> Value {
    json!(v.iter().map(RatioJson).collect::<Vec<_>>())
}

fn cmd_census(run: &Run, k: u8, trace: bool) -> Result<Output, Failure> {
    let (s, steps) = run.sequence()?;
    if trace {
        let g0 = load_tournament(&run.base)?;
        let t = census::quasirandom_trace(&g0, &s, steps)?;
        return Ok(json_output(&t, true));
    }
    let g = run.iterate()?;
    let report = if k == 3 {
        let c = census::census3(&g);
        json!({ "t": steps, "n": g.n(), "a": c.a, "b": c.b })
    } else {
        let c = census::census4(&g)?;
        let counts: serde_json::Map<String, Value> = [
            FourType::Transitive,
            FourType::Winner,
            FourType::Loser,
            FourType::Mixed,
        ]
        .iter()
        .map(|&ty| (ty.name().to_string(), json!(c.get(ty))))
        .collect();
        json!({
            "t": steps,
            "n": g.n(),
            "counts": counts,
            "proportions": c.proportions().map(|p| ratios_json(&p)),
            "d_star_T4": census::transitive4_density(&c).as_ref().map(RatioJson),
        })
    };
    Ok(json_output(&report, true))
}

fn cmd_analyze(run: &Run, chi: bool, cop: bool) -> Result<Output, Failure> {
    let g = run.iterate()?;
    let report = props::analyze(&g, props::AnalyzeOptions { chi, cop })?;
    let verified = report.cop.as_ref().is_none_or(|c| c.strategy_verified);
    Ok(json_output(&report, verified))
}

fn cmd_verify(suite: SuiteArg) -> Result<Output, Failure> {
    let report = verify::run_suite(suite.into());
    let ok = report.all_passed();
    Ok(json_output(&report, ok))
}

fn cmd_embed(run: &Run, target: &str, full: bool) -> Result<Output, Failure> {
    let g0 = load_tournament(&run.base)?;
    let h = load_tournament(target)?;
    let (s, _) = run.sequence()?;
    let e = if full {
        embed::embed_full(&g0, &s, &h)?
    } else {
        embed::embed(&g0, &s, &h)?
    };
    let verified = embed::verify_embedding(&e);
    let mut v = serde_json::to_value(&e).expect("reports serialize");
    v["verified"] = json!(verified);
    Ok(json_output(&v, verified))
}

fn cmd_solve_cops(run: &Run, k: Option<u64>, strategy: bool) -> Result<Output, Failure> {
    let g = run.iterate()?;
    let v = match k {
        Some(k) => {
            let w = pursuit::cops_win(&g, k as usize)?;
            let verified = !w.win || pursuit::verify_strategy(&g, &w);
            let v = json!({
                "n": g.n(),
                "k": k,
                "cops_win": w.win,
                "placement": w.placement,
                "strategy_verified": w.win.then_some(verified),
            });
            return Ok(json_output(&v, verified));
        }
        None => pursuit::cop_number(&g)?,
    };
    let verified = pursuit::verify_strategy(&g, &v.certificate);
    let mut report = json!({
        "n": g.n(),
        "cop_number": v.cop_number,
        "losing_counts": v.losing_counts,
        "placement": v.certificate.placement,
        "strategy_verified": verified,
    });
    if strategy {
        report["strategy"] = serde_json::to_value(v.export_strategy()).expect("reports serialize");
    }
    Ok(json_output(&report, verified))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if let Some(n) = cli.max_nodes {
        // the library reads the cap from the environment wherever it builds
        // a generator
        std::env::set_var(MAX_NODES_ENV, n.to_string());
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Generate {
            run,
            format,
            oriented,
        } => cmd_generate(run, *format, *oriented),
        Command::Census { run, k, trace } => cmd_census(run, *k, *trace),
        Command::Analyze { run, chi, cop } => cmd_analyze(run, *chi, *cop),
        Command::Verify { suite } => cmd_verify(*suite),
        Command::Embed { run, target, full } => cmd_embed(run, target, *full),
        Command::SolveCops { run, k, strategy } => cmd_solve_cops(run, *k, *strategy),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| Failure::Io(p.clone(), e)),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.verified { 0 } else { 3 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
