//! Command-line front end: construct node sets, decide their properties,
//! run the verification suites, and render pictures.
//!
//! Exit codes: 0 when the requested property holds or all checks pass,
//! 1 for a mathematical failure (property false, verification failed,
//! construction impossible), 2 for usage or file-format problems.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxcurve::analysis::{
    certify_gc, fundamental_polynomial, is_correct, is_independent, is_maximal_curve,
    maximal_lines, nodes_on_curve, GcCertificate, GcOutcome, NodeSet, NodeSetFile,
};
use maxcurve::combinatorics::d_count;
use maxcurve::constructions::{
    chung_yao_random, grid_curves, principal_lattice, two_curve_correct_set,
    DEFAULT_SAMPLER_BUDGET,
};
use maxcurve::poly::Curve;
use maxcurve::render::render_svg;
use maxcurve::verify::{all_pass, run_suite, summarize, Preset, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "maxcurve",
    version,
    about = "Exact interpolation node sets and their maximal curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a node set and write it (with any companion data) to disk.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Decide a property of a node set; the exit code is the answer.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Compute the fundamental polynomial of one node.
    Fundamental {
        #[arg(long)]
        nodes: PathBuf,
        /// Node index within the file's node order.
        #[arg(long)]
        node: usize,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite; exit 0 only if every check passes.
    Verify {
        #[arg(value_enum)]
        preset: PresetArg,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Comma-separated seeds for the randomized constructions.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seeds: Vec<u64>,
        /// Point-sampling budget; falls back to MAXCURVE_BUDGET, then 1024.
        #[arg(long)]
        budget: Option<usize>,
        /// Ceiling for the exhaustive arithmetic sweeps.
        #[arg(long, default_value_t = 12)]
        ceiling: i64,
        /// Deliberately break one set to demonstrate failure reporting.
        #[arg(long, default_value_t = false)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render a node set (and optional curves) as deterministic SVG.
    Render {
        #[arg(long)]
        nodes: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// Curve files to overlay; may be repeated.
        #[arg(long)]
        curve: Vec<PathBuf>,
        /// Output path; omit to print the SVG to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Triangular lattice of the given degree.
    Principal(PrincipalArgs),
    /// Pairwise intersections of degree+2 random lines in general position.
    /// Writes companion .lines.json and .cert.json files.
    ChungYao(ChungYaoArgs),
    /// Complete intersection of two line-factored curves plus greedy extra
    /// points. Writes a companion .curves.json file.
    TwoCurve(TwoCurveArgs),
}

#[derive(Args)]
struct PrincipalArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChungYaoArgs {
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwoCurveArgs {
    /// First curve file (JSON). Requires --g.
    #[arg(long, requires = "g", conflicts_with = "grid")]
    f: Option<PathBuf>,
    /// Second curve file (JSON). Requires --f.
    #[arg(long, requires = "f")]
    g: Option<PathBuf>,
    /// Axis-parallel line products of the two given degrees.
    #[arg(long, num_args = 2, value_names = ["K", "M"])]
    grid: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    delta: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Unique interpolation: full cardinality and full rank.
    Correct(NodesArgs),
    /// Linearly independent evaluation functionals.
    Independent(NodesArgs),
    /// List every line through the maximal number of nodes.
    MaximalLines {
        #[command(flatten)]
        nodes: NodesArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether the given curve passes through the maximal node count.
    MaximalCurve {
        #[command(flatten)]
        nodes: NodesArgs,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Certify that every fundamental polynomial splits into lines.
    Gc {
        #[command(flatten)]
        nodes: NodesArgs,
        /// Certificate file to verify instead of searching.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Args)]
struct NodesArgs {
    #[arg(long)]
    nodes: PathBuf,
    /// Override the degree stored in the node file.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum PresetArg {
    Identities,
    Pairwise,
    Triple,
    Gc,
    Construction,
    All,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Preset {
        match p {
            PresetArg::Identities => Preset::Identities,
            PresetArg::Pairwise => Preset::Pairwise,
            PresetArg::Triple => Preset::Triple,
            PresetArg::Gc => Preset::Gc,
            PresetArg::Construction => Preset::Construction,
            PresetArg::All => Preset::All,
        }
    }
}

enum CliError {
    /// Bad input from the user: unreadable or malformed files, bad flags.
    Usage(String),
    /// The mathematics said no: property false, construction impossible.
    Math(String),
}

type CliResult = Result<u8, CliError>;

fn usage<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Usage(format!("{context}: {e}"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(usage(&format!("cannot read {what} file {}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(usage(&format!("cannot parse {what} file {}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(usage(&format!("cannot write {}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(usage("cannot serialize output"))?;
    text.push('\n');
    write_text(path, &text)
}

/// `x.json` -> `x.<tag>.json`, keeping the directory.
fn sibling(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    out.with_file_name(format!("{stem}.{tag}.json"))
}

fn load_nodes(args: &NodesArgs) -> Result<(NodeSet, usize), CliError> {
    let file: NodeSetFile = read_json(&args.nodes, "node set")?;
    let degree = args.degree.unwrap_or(file.degree as usize);
    Ok((file.nodes, degree))
}

fn budget_or_env(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("MAXCURVE_BUDGET").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_SAMPLER_BUDGET)
}

fn emit_node_file(file: &NodeSetFile, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => write_json(path, file),
        None => {
            let text =
                serde_json::to_string_pretty(file).map_err(usage("cannot serialize output"))?;
            println!("{text}");
            Ok(())
        }
    }
}

fn answer(yes: bool, label: &str) -> CliResult {
    println!("{label}: {yes}");
    Ok(if yes { 0 } else { 1 })
}

fn cmd_construct(what: ConstructCmd) -> CliResult {
    match what {
        ConstructCmd::Principal(a) => {
            let file =
                NodeSetFile { degree: a.degree as i64, nodes: principal_lattice(a.degree) };
            emit_node_file(&file, &a.out)?;
            if let Some(out) = &a.out {
                eprintln!("wrote {} nodes to {}", file.nodes.len(), out.display());
            }
            Ok(0)
        }
        ConstructCmd::ChungYao(a) => {
            let (lines, nodes, cert) = chung_yao_random(a.degree, a.seed)
                .map_err(|e| CliError::Math(e.to_string()))?;
            let file = NodeSetFile { degree: a.degree as i64, nodes };
            emit_node_file(&file, &a.out)?;
            if let Some(out) = &a.out {
                write_json(&sibling(out, "lines"), &lines)?;
                write_json(&sibling(out, "cert"), &cert)?;
                eprintln!(
                    "wrote {} nodes to {} (+ .lines.json, .cert.json)",
                    file.nodes.len(),
                    out.display()
                );
            }
            Ok(0)
        }
        ConstructCmd::TwoCurve(a) => {
            let (f, g) = match (&a.f, &a.g, &a.grid) {
                (Some(fp), Some(gp), None) => {
                    (read_json(fp, "curve")?, read_json(gp, "curve")?)
                }
                (None, None, Some(km)) => grid_curves(km[0], km[1]),
                _ => {
                    return Err(CliError::Usage(
                        "provide either --f and --g curve files or --grid K M".into(),
                    ))
                }
            };
            let budget = budget_or_env(a.budget);
            let spec = two_curve_correct_set(&f, &g, a.delta, a.seed, budget)
                .map_err(|e| CliError::Math(e.to_string()))?;
            let file = NodeSetFile { degree: spec.n as i64, nodes: spec.node_set() };
            emit_node_file(&file, &a.out)?;
            if let Some(out) = &a.out {
                write_json(&sibling(out, "curves"), &spec)?;
                eprintln!(
                    "wrote {} nodes to {} (+ .curves.json), ambient degree {}",
                    file.nodes.len(),
                    out.display(),
                    spec.n
                );
            }
            Ok(0)
        }
    }
}

fn cmd_check(what: CheckCmd) -> CliResult {
    match what {
        CheckCmd::Correct(args) => {
            let (x, n) = load_nodes(&args)?;
            answer(is_correct(&x, n), "correct")
        }
        CheckCmd::Independent(args) => {
            let (x, n) = load_nodes(&args)?;
            answer(is_independent(&x, n), "independent")
        }
        CheckCmd::MaximalLines { nodes, format } => {
            let (x, n) = load_nodes(&nodes)?;
            let lines = maximal_lines(&x, n);
            match format {
                Format::Json => {
                    let text = serde_json::to_string(&lines)
                        .map_err(usage("cannot serialize output"))?;
                    println!("{text}");
                }
                Format::Text => {
                    for l in &lines {
                        println!("{l}");
                    }
                    eprintln!("{} maximal lines", lines.len());
                }
            }
            Ok(0)
        }
        CheckCmd::MaximalCurve { nodes, curve } => {
            let (x, n) = load_nodes(&nodes)?;
            let c: Curve = read_json(&curve, "curve")?;
            let on = nodes_on_curve(&x, &c).len();
            let maximal =
                is_maximal_curve(&x, &c, n).map_err(|e| CliError::Math(e.to_string()))?;
            println!(
                "nodes on curve: {on} of a possible {}",
                d_count(n as i64, c.total_degree() as i64)
            );
            answer(maximal, "maximal")
        }
        CheckCmd::Gc { nodes, cert } => {
            let (x, n) = load_nodes(&nodes)?;
            let hint: Option<GcCertificate> = match &cert {
                Some(path) => Some(read_json(path, "certificate")?),
                None => None,
            };
            let outcome =
                certify_gc(&x, n, hint.as_ref()).map_err(|e| CliError::Math(e.to_string()))?;
            match outcome {
                GcOutcome::Certified(c) => {
                    let text = serde_json::to_string(&c)
                        .map_err(usage("cannot serialize output"))?;
                    println!("{text}");
                    eprintln!("certified: every fundamental polynomial splits into lines");
                    Ok(0)
                }
                GcOutcome::NotGc { node, uncovered, line_factors_found } => {
                    println!(
                        "not certifiable: node {node} has {line_factors_found} line factors \
                         and {uncovered} uncovered nodes"
                    );
                    Ok(1)
                }
                GcOutcome::Inconclusive { node, uncovered, line_factors_found } => {
                    println!(
                        "inconclusive at node {node}: {line_factors_found} line factors, \
                         {uncovered} uncovered nodes"
                    );
                    Ok(1)
                }
            }
        }
    }
}

fn cmd_fundamental(
    nodes: PathBuf,
    node: usize,
    degree: Option<usize>,
    format: Format,
) -> CliResult {
    let (x, n) = load_nodes(&NodesArgs { nodes, degree })?;
    let f = fundamental_polynomial(&x, node, n).map_err(|e| CliError::Math(e.to_string()))?;
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "node": node,
                "unique": f.unique,
                "polynomial": f.poly,
            });
            println!("{value}");
        }
        Format::Text => {
            println!("{}", f.poly);
            if !f.unique {
                eprintln!("note: the node set is not correct; this is one of many witnesses");
            }
        }
    }
    Ok(0)
}

fn cmd_verify(
    preset: PresetArg,
    max_degree: usize,
    seeds: Vec<u64>,
    budget: Option<usize>,
    ceiling: i64,
    inject_fault: bool,
    format: Format,
) -> CliResult {
    let cfg = SuiteConfig {
        preset: preset.into(),
        max_degree,
        seeds,
        budget: budget_or_env(budget),
        identity_ceiling: ceiling,
        inject_fault,
    };
    let reports = run_suite(&cfg);
    match format {
        Format::Json => {
            for r in &reports {
                let line =
                    serde_json::to_string(r).map_err(usage("cannot serialize report"))?;
                println!("{line}");
            }
            eprint!("{}", summarize(&reports));
        }
        Format::Text => {
            print!("{}", summarize(&reports));
        }
    }
    Ok(if all_pass(&reports) { 0 } else { 1 })
}

fn cmd_render(
    nodes: PathBuf,
    degree: Option<usize>,
    curve_paths: Vec<PathBuf>,
    out: Option<PathBuf>,
) -> CliResult {
    let (x, n) = load_nodes(&NodesArgs { nodes, degree })?;
    let mut curves = Vec::with_capacity(curve_paths.len());
    for p in &curve_paths {
        curves.push(read_json::<Curve>(p, "curve")?);
    }
    let svg = render_svg(&x, n, &curves);
    match out {
        Some(path) => {
            write_text(&path, &svg)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{svg}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Construct { what } => cmd_construct(what),
        Cmd::Check { what } => cmd_check(what),
        Cmd::Fundamental { nodes, node, degree, format } => {
            cmd_fundamental(nodes, node, degree, format)
        }
        Cmd::Verify { preset, max_degree, seeds, budget, ceiling, inject_fault, format } => {
            cmd_verify(preset, max_degree, seeds, budget, ceiling, inject_fault, format)
        }
        Cmd::Render { nodes, degree, curve, out } => cmd_render(nodes, degree, curve, out),
    }
}

fn main() -> ExitCode {
    // Die on SIGPIPE like other batch tools so `maxcurve ... | head` does
    // not turn a closed pipe into a panic mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Math(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}
