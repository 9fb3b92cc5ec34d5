use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgmd_core::graph::{
    complete_graph, cycle_graph, path_graph, random_tree, star_graph, wheel_graph, SimpleGraph,
};
use pgmd_core::group::{FiniteGroup, GroupSpec};
use pgmd_core::report::{CrossCheck, MdReport, Method};
use pgmd_core::resolve::{exchange_property, metric_dimension_oracle, Caps, ResolveError};
use pgmd_core::theory::{
    cyclic_formula_value, md_formula_cyclic, md_formula_power_graph_value, psi_membership, r_set,
    verify_theorems, PowerGraph, VerifyConfig,
};
use pgmd_core::twins::{md_formula_no_singleton, twin_partition};
use serde_json::{json, Value};

const AFTER_HELP: &str = "\
Graph tokens for --graph: complete:N, path:N, cycle:N, star:N (N leaves plus a centre),
wheel:N (N rim vertices plus one hub, N+1 vertices in total) and tree:N (uniform random
tree seeded by --seed). Anything else is read as an edge-list file: a header `p <count>`
followed by one `u v` pair per line, 0-based.

Environment: PGMD_THREADS sets the number of worker threads.
Exit status: 0 success, 1 computation error or verification failure, 2 usage error.";

#[derive(Parser, Debug)]
#[command(name = "pgmd", version, about = "Power graphs of finite groups, metric dimension and resolving sets", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group summary: element orders, inverses, involutions, Cayley table.
    Group(CommonArgs),
    /// Power graph of a group (or a graph given with --graph).
    Pgraph(CommonArgs),
    /// Metric dimension by closed form, exhaustive search, or both.
    Md(MdArgs),
    /// Twin classes and singleton twins.
    Twins(CommonArgs),
    /// Decide the exchange property for minimal resolving sets.
    Exchange(ExchangeArgs),
    /// Vertices resolving one pair: R{x,y} = {z : d(x,z) != d(y,z)}.
    Rset(RsetArgs),
    /// Membership of a group in the class Psi, with per-condition witnesses.
    Psi(CommonArgs),
    /// Cross-check every closed form against exhaustive search.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Group spec: Z:<n>, D:<n> (order 2n), P:Z:<a>xZ:<b>x..., C:<csv path>.
    #[arg(long, conflicts_with = "graph")]
    group: Option<String>,
    /// Edge-list file or generator token (see below).
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for tree:N graphs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Show group notation instead of indices in text and dot output.
    #[arg(long)]
    labels: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Vertex limit for exhaustive metric-dimension search.
    #[arg(long, value_name = "N")]
    cap_oracle: Option<usize>,
    /// Vertex limit for enumerating minimal resolving sets.
    #[arg(long, value_name = "N")]
    cap_enum: Option<usize>,
    /// Acknowledge that raised caps may run for a very long time.
    #[arg(long)]
    unsafe_cap: bool,
}

#[derive(Args, Debug)]
struct MdArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value_t = MdMethod::Formula)]
    method: MdMethod,
}

#[derive(Args, Debug)]
struct ExchangeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Only accept replacements v taken from W2 \ W1.
    #[arg(long)]
    strict_exchange: bool,
}

#[derive(Args, Debug)]
struct RsetArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Two distinct vertex indices, `i,j`.
    #[arg(long, required = true)]
    pair: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Inclusive range of n for the cyclic and dihedral sweeps, `a..b`.
    #[arg(long, default_value = "3..8")]
    n_range: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edgelist,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MdMethod {
    Brute,
    Formula,
    Both,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

fn compute(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

type CliResult<T> = Result<T, CliError>;

/// A run ends with text on stdout and a status; verification failures still
/// print their report.
struct Outcome {
    output: String,
    code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("pgmd: {}", message(&e));
        return ExitCode::from(e.code());
    }
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("pgmd: {}", message(&e));
            ExitCode::from(e.code())
        }
    }
}

fn message(e: &CliError) -> &str {
    match e {
        CliError::Usage(m) | CliError::Compute(m) => m,
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("PGMD_THREADS") else {
        return Ok(());
    };
    let threads = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "PGMD_THREADS: expected a positive integer, got `{raw}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(compute)
}

fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Group(args) => cmd_group(&args),
        Command::Pgraph(args) => cmd_pgraph(&args),
        Command::Md(args) => cmd_md(&args),
        Command::Twins(args) => cmd_twins(&args),
        Command::Exchange(args) => cmd_exchange(&args),
        Command::Rset(args) => cmd_rset(&args),
        Command::Psi(args) => cmd_psi(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

// ---------------------------------------------------------------- inputs

enum Input {
    Group {
        spec: GroupSpec,
        pg: Box<PowerGraph>,
    },
    Graph(SimpleGraph),
}

impl Input {
    fn graph(&self) -> &SimpleGraph {
        match self {
            Input::Group { pg, .. } => pg.graph(),
            Input::Graph(g) => g,
        }
    }

    fn group(&self) -> Option<&FiniteGroup> {
        match self {
            Input::Group { pg, .. } => Some(pg.group()),
            Input::Graph(_) => None,
        }
    }

    fn label_fn(&self, labels: bool) -> impl Fn(usize) -> String + '_ {
        move |v| match (labels, self.group()) {
            (true, Some(g)) => g.element_label(v),
            _ => v.to_string(),
        }
    }
}

fn load_group(spec: &str) -> CliResult<(GroupSpec, FiniteGroup)> {
    let parsed: GroupSpec = spec
        .parse()
        .map_err(|e| CliError::Usage(format!("--group {spec}: {e}")))?;
    let group = parsed.build().map_err(|e| match &parsed {
        GroupSpec::CayleyTable(path) => compute(format!("--group: {}: {e}", path.display())),
        _ => CliError::Usage(format!("--group {spec}: {e}")),
    })?;
    Ok((parsed, group))
}

fn load_input(args: &CommonArgs) -> CliResult<Input> {
    match (&args.group, &args.graph) {
        (Some(spec), None) => {
            let (spec, group) = load_group(spec)?;
            Ok(Input::Group {
                spec,
                pg: Box::new(PowerGraph::new(group)),
            })
        }
        (None, Some(source)) => load_graph(source, args.seed).map(Input::Graph),
        (None, None) => Err(CliError::Usage(
            "one of --group or --graph is required".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--group and --graph are mutually exclusive".into(),
        )),
    }
}

fn require_group(args: &CommonArgs, command: &str) -> CliResult<(GroupSpec, FiniteGroup)> {
    if args.graph.is_some() {
        return Err(CliError::Usage(format!(
            "{command} takes --group, not --graph"
        )));
    }
    let spec = args
        .group
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{command} requires --group")))?;
    load_group(spec)
}

fn load_graph(source: &str, seed: u64) -> CliResult<SimpleGraph> {
    if let Some((kind, count)) = source.split_once(':') {
        let generator = matches!(
            kind,
            "complete" | "path" | "cycle" | "star" | "wheel" | "tree"
        );
        if generator && !Path::new(source).exists() {
            let n: usize = count.parse().map_err(|_| {
                CliError::Usage(format!("--graph {source}: `{count}` is not a vertex count"))
            })?;
            let bad = |reason: &str| CliError::Usage(format!("--graph {source}: {reason}"));
            return match kind {
                "complete" if n >= 1 => Ok(complete_graph(n)),
                "path" if n >= 1 => Ok(path_graph(n)),
                "cycle" if n >= 3 => Ok(cycle_graph(n)),
                "star" => Ok(star_graph(n)),
                "wheel" => wheel_graph(n).map_err(|e| bad(&e.to_string())),
                "tree" if n >= 1 => Ok(random_tree(n, seed)),
                "cycle" => Err(bad("a cycle needs at least 3 vertices")),
                _ => Err(bad("needs at least 1 vertex")),
            };
        }
    }
    let path = PathBuf::from(source);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| compute(format!("--graph {}: {e}", path.display())))?;
    SimpleGraph::parse_edge_list(&text)
        .map_err(|e| compute(format!("--graph {}: {e}", path.display())))
}

fn caps_from(args: &CapArgs) -> CliResult<Caps> {
    let defaults = Caps::default();
    let mut caps = defaults;
    for (flag, value, default, slot) in [
        (
            "--cap-oracle",
            args.cap_oracle,
            defaults.oracle,
            &mut caps.oracle,
        ),
        (
            "--cap-enum",
            args.cap_enum,
            defaults.enumeration,
            &mut caps.enumeration,
        ),
    ] {
        if let Some(v) = value {
            if v > default && !args.unsafe_cap {
                return Err(CliError::Usage(format!(
                    "{flag} {v} exceeds the default of {default}; pass --unsafe-cap to allow it"
                )));
            }
            *slot = v;
        }
    }
    Ok(caps)
}

fn reject_format(format: Format, command: &str, allowed: &[Format]) -> CliResult<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--format {}: not supported by {command}",
            format.to_possible_value().unwrap().get_name()
        )))
    }
}

fn json_out(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn set_text(items: &[usize], label: &dyn Fn(usize) -> String) -> String {
    let parts: Vec<String> = items.iter().map(|&v| label(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

// -------------------------------------------------------------- commands

fn cmd_group(args: &CommonArgs) -> CliResult<Outcome> {
    let (spec, g) = require_group(args, "group")?;
    let format = args.format.unwrap_or(Format::Json);
    reject_format(format, "group", &[Format::Json, Format::Text])?;
    let elements: Vec<Value> = g
        .elements()
        .map(|x| {
            json!({
                "index": x,
                "label": g.element_label(x),
                "order": g.element_order(x),
                "inverse": g.inverse(x),
            })
        })
        .collect();
    if format == Format::Json {
        return Ok(Outcome::ok(json_out(&json!({
            "spec": spec.to_string(),
            "order": g.order(),
            "identity": g.identity(),
            "abelian": g.is_abelian(),
            "cyclic": g.is_cyclic(),
            "involutions": g.involutions(),
            "elements": elements,
            "table": g.table_rows(),
        }))));
    }
    let name = |x: usize| {
        if args.labels {
            g.element_label(x)
        } else {
            x.to_string()
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "group {spec} ({}), order {}", g.label(), g.order());
    let _ = writeln!(out, "abelian {}, cyclic {}", g.is_abelian(), g.is_cyclic());
    let _ = writeln!(out, "involutions {}", set_text(&g.involutions(), &name));
    for x in g.elements() {
        let _ = writeln!(
            out,
            "{:>4}  {:<12} order {:<4} inverse {}",
            x,
            g.element_label(x),
            g.element_order(x),
            name(g.inverse(x))
        );
    }
    Ok(Outcome::ok(out))
}

fn cmd_pgraph(args: &CommonArgs) -> CliResult<Outcome> {
    let input = load_input(args)?;
    let graph = input.graph();
    let label = input.label_fn(args.labels);
    let output = match args.format.unwrap_or(Format::Edgelist) {
        Format::Edgelist => graph.to_edge_list(),
        Format::Dot => {
            if args.labels && input.group().is_some() {
                graph.to_dot(Some(&label))
            } else {
                graph.to_dot(None)
            }
        }
        Format::Json => json_out(&json!({
            "vertices": graph.vertex_count(),
            "edges": graph.edges().into_iter().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!(
                "{} vertices, {} edges\n",
                graph.vertex_count(),
                graph.edge_count()
            );
            for v in 0..graph.vertex_count() {
                let nbrs: Vec<usize> = graph.neighbors(v).ones().collect();
                let _ = writeln!(out, "{}: {}", label(v), set_text(&nbrs, &label));
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}

/// The closed form matching the input: cyclic, dihedral or general power
/// graph formula for groups, the twin formula for plain graphs.
fn formula_report(input: &Input) -> CliResult<MdReport> {
    match input {
        Input::Group { spec, pg } => match spec {
            GroupSpec::Cyclic(n) if *n >= 2 => md_formula_cyclic(*n).map_err(compute),
            GroupSpec::Dihedral(n) if *n >= 3 => {
                let (cyclic, _) = cyclic_formula_value(*n).map_err(compute)?;
                let mut report = MdReport::formula(cyclic + n - 2, Method::FormulaDihedral);
                report.note = Some(format!("cyclic value {cyclic} + {}", n - 2));
                Ok(report)
            }
            _ => {
                let (beta, in_psi, involutions) = md_formula_power_graph_value(pg);
                let mut report = MdReport::formula(beta, Method::FormulaPowerGraph);
                report.note = Some(if in_psi {
                    "group in Psi: +1".to_string()
                } else {
                    format!("group not in Psi: + {involutions} resolving involutions")
                });
                Ok(report)
            }
        },
        Input::Graph(g) => {
            md_formula_no_singleton(g).map_err(|e| compute(format!("{e}; use --method brute")))
        }
    }
}

fn cmd_md(args: &MdArgs) -> CliResult<Outcome> {
    let common = &args.common;
    let format = common.format.unwrap_or(Format::Json);
    reject_format(format, "md", &[Format::Json, Format::Text])?;
    let caps = caps_from(&common.caps)?;
    let input = load_input(common)?;
    let graph = input.graph();

    let report = match args.method {
        MdMethod::Brute => metric_dimension_oracle(graph, caps).map_err(compute)?,
        MdMethod::Formula => formula_report(&input)?,
        MdMethod::Both => {
            let mut report = formula_report(&input)?;
            match metric_dimension_oracle(graph, caps) {
                Ok(oracle) => {
                    report.cross_check = Some(CrossCheck::compare(report.beta, oracle.beta));
                    report.witness_basis = oracle.witness_basis;
                }
                Err(ResolveError::TooLarge { .. }) => {
                    report.cross_check = Some(CrossCheck::NotAttempted)
                }
                Err(e) => return Err(compute(e)),
            }
            report
        }
    };

    let disagrees = matches!(report.cross_check, Some(CrossCheck::Disagree { .. }));
    let output = if format == Format::Json {
        json_out(&report.to_json())
    } else {
        let label = input.label_fn(common.labels);
        let mut out = format!("beta {}\nmethod {}\n", report.beta, report.method);
        if let Some(basis) = &report.witness_basis {
            let _ = writeln!(out, "basis {}", set_text(basis, &label));
        }
        if let Some(check) = &report.cross_check {
            let _ = writeln!(out, "cross_check {check}");
        }
        if let Some(note) = &report.note {
            let _ = writeln!(out, "note {note}");
        }
        out
    };
    Ok(Outcome {
        output,
        code: if disagrees { 1 } else { 0 },
    })
}

fn cmd_twins(args: &CommonArgs) -> CliResult<Outcome> {
    let format = args.format.unwrap_or(Format::Json);
    reject_format(format, "twins", &[Format::Json, Format::Text])?;
    let input = load_input(args)?;
    let partition = match &input {
        Input::Group { pg, .. } => pg.twins().clone(),
        Input::Graph(g) => twin_partition(g),
    };
    if format == Format::Json {
        return Ok(Outcome::ok(json_out(&partition.to_json())));
    }
    let label = input.label_fn(args.labels);
    let mut out = format!("{} twin classes\n", partition.class_count());
    for class in partition.classes() {
        let _ = writeln!(out, "{}", set_text(class, &label));
    }
    let _ = writeln!(
        out,
        "singletons {}",
        set_text(&partition.singletons(), &label)
    );
    Ok(Outcome::ok(out))
}

fn cmd_exchange(args: &ExchangeArgs) -> CliResult<Outcome> {
    let common = &args.common;
    let format = common.format.unwrap_or(Format::Json);
    reject_format(format, "exchange", &[Format::Json, Format::Text])?;
    let caps = caps_from(&common.caps)?;
    let input = load_input(common)?;
    let report = exchange_property(input.graph(), args.strict_exchange, caps).map_err(compute)?;
    if format == Format::Json {
        return Ok(Outcome::ok(json_out(&report.to_json())));
    }
    let label = input.label_fn(common.labels);
    let mut out = format!(
        "exchange {} ({} minimal resolving sets, {} reading)\n",
        if report.holds { "holds" } else { "fails" },
        report.minimal_sets_count,
        if report.strict { "strict" } else { "literal" },
    );
    if let Some(ce) = &report.counterexample {
        let _ = writeln!(
            out,
            "counterexample W1 = {}, W2 = {}, u = {}",
            set_text(&ce.w1, &label),
            set_text(&ce.w2, &label),
            label(ce.u)
        );
    }
    Ok(Outcome::ok(out))
}

fn parse_pair(raw: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("--pair {raw}: expected two indices `i,j`"));
    let (a, b) = raw.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn cmd_rset(args: &RsetArgs) -> CliResult<Outcome> {
    let common = &args.common;
    let format = common.format.unwrap_or(Format::Json);
    reject_format(format, "rset", &[Format::Json, Format::Text])?;
    let (x, y) = parse_pair(&args.pair)?;
    let input = load_input(common)?;
    let graph = input.graph();
    let n = graph.vertex_count();
    if x >= n || y >= n {
        return Err(CliError::Usage(format!(
            "--pair {}: indices must be below {n}",
            args.pair
        )));
    }
    let set = r_set(graph.distances(), x, y)
        .map_err(|e| CliError::Usage(format!("--pair {}: {e}", args.pair)))?;
    if format == Format::Json {
        return Ok(Outcome::ok(json_out(
            &json!({ "pair": [x, y], "r_set": set }),
        )));
    }
    let label = input.label_fn(common.labels);
    Ok(Outcome::ok(format!(
        "R{{{}, {}}} = {}\n",
        label(x),
        label(y),
        set_text(&set, &label)
    )))
}

fn cmd_psi(args: &CommonArgs) -> CliResult<Outcome> {
    let (spec, g) = require_group(args, "psi")?;
    let format = args.format.unwrap_or(Format::Json);
    reject_format(format, "psi", &[Format::Json, Format::Text])?;
    let verdict = psi_membership(&g);
    if format == Format::Json {
        return Ok(Outcome::ok(json_out(&verdict.to_json())));
    }
    let mut out = format!(
        "{spec}: {} Psi\n",
        if verdict.in_psi { "in" } else { "not in" }
    );
    for c in &verdict.conditions {
        let _ = write!(
            out,
            "  {:<44} {}",
            c.name,
            if c.holds { "holds" } else { "fails" }
        );
        if let Some(w) = &c.witness {
            let _ = write!(out, " ({w})");
        }
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}

fn parse_range(raw: &str) -> CliResult<std::ops::RangeInclusive<usize>> {
    let bad = || CliError::Usage(format!("--n-range {raw}: expected `a..b` with 1 <= a <= b"));
    let (a, b) = raw.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let format = args.format.unwrap_or(Format::Text);
    reject_format(format, "verify", &[Format::Json, Format::Text])?;
    let config = VerifyConfig {
        n_range: parse_range(&args.n_range)?,
        caps: caps_from(&args.caps)?,
    };
    let report = verify_theorems(&config);
    let output = match format {
        Format::Json => json_out(&report.to_json()),
        _ => report.render_table(),
    };
    Ok(Outcome {
        output,
        code: if report.all_pass() { 0 } else { 1 },
    })
}
