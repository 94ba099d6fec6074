//! `pmoe` — ad-hoc pattern queries and demo replay from the command line.
//!
//! Exit codes: 0 when the query yields at least one result, 1 when it yields
//! none, 2 on any error (parse, type, fuel, I/O).

use std::process::ExitCode;

use clap::{Args, Parser as ClapParser, Subcommand};

use pmoe_cli::parser;
use pmoe_core::engine::{clause, match_all_in, EngineConfig, SearchMode};
use pmoe_core::pattern::{LetBinder, LoopEnd, Pat, Pattern};
use pmoe_core::printer::print_value;
use pmoe_core::value::{naturals, Bindings, Expr, Value};

#[derive(ClapParser)]
#[command(
    name = "pmoe",
    about = "Pattern-match-oriented queries over JSON targets and built-in streams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a pattern query against a target collection.
    Query(QueryArgs),
    /// Replay a named demo program.
    Demo(DemoArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Matcher expression, e.g. "multiset integer" or "(multiset eq, multiset eq)".
    #[arg(long)]
    matcher: String,
    /// Pattern expression, e.g. "_ ++ $p : #(p + 2) : _".
    #[arg(long)]
    pattern: String,
    /// Body expression evaluated per result; defaults to a tuple of the
    /// pattern's variables in first-binding order.
    #[arg(long)]
    body: Option<String>,
    /// JSON file holding the target value.
    #[arg(long, conflicts_with = "target_builtin")]
    target: Option<std::path::PathBuf>,
    /// Built-in infinite target: "primes" or "naturals".
    #[arg(long)]
    target_builtin: Option<String>,
    /// Traversal order of the reduction tree: bfs or dfs.
    #[arg(long, default_value = "bfs")]
    mode: String,
    /// Stop after this many results.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    take: Option<u64>,
    /// Print statesExpanded/branchesCreated to stderr.
    #[arg(long)]
    stats: bool,
    /// Abort the query after this many expanded states.
    #[arg(long, default_value_t = 10_000_000)]
    max_states: u64,
}

#[derive(Args)]
struct DemoArgs {
    /// Demo name; see --list.
    name: Option<String>,
    /// Stop after this many output lines.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    take: Option<u64>,
    /// List the available demos.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Query(args) => run_query(&args),
        Command::Demo(args) => run_demo(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_query(args: &QueryArgs) -> Result<bool, String> {
    let matcher =
        parser::parse_matcher(&args.matcher).map_err(|e| format!("in matcher expression: {e}"))?;
    let pattern = parser::parse_pattern(&args.pattern).map_err(|e| format!("in pattern: {e}"))?;
    let body = match &args.body {
        Some(src) => parser::parse_expr(src).map_err(|e| format!("in body expression: {e}"))?,
        None => default_body(&pattern),
    };
    let target = load_target(args)?;
    let mode = match args.mode.as_str() {
        "bfs" => SearchMode::Bfs,
        "dfs" => SearchMode::Dfs,
        other => return Err(format!("unknown mode `{other}` (use bfs or dfs)")),
    };
    let config = EngineConfig {
        max_states: Some(args.max_states),
        ..EngineConfig::default()
    };
    let mut stream = match_all_in(
        &target,
        &matcher,
        vec![clause(pattern, body)],
        mode,
        Bindings::new(),
        config,
    );
    let mut printed = 0u64;
    let limit = args.take.unwrap_or(u64::MAX);
    let mut failure = None;
    while printed < limit {
        match stream.next() {
            Some(Ok(v)) => {
                let line = print_value(&v).map_err(|e| e.to_string())?;
                println!("{line}");
                printed += 1;
            }
            Some(Err(e)) => {
                failure = Some(e.to_string());
                break;
            }
            None => break,
        }
    }
    if args.stats {
        let stats = stream.stats();
        eprintln!("statesExpanded: {}", stats.states_expanded);
        eprintln!("branchesCreated: {}", stats.branches_created);
    }
    match failure {
        Some(msg) => Err(msg),
        None => Ok(printed > 0),
    }
}

fn load_target(args: &QueryArgs) -> Result<Value, String> {
    match (&args.target, &args.target_builtin) {
        (Some(path), None) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            pmoe_core::json::value_from_json(&src).map_err(|e| e.to_string())
        }
        (None, Some(name)) => match name.as_str() {
            "primes" => Ok(Value::Coll(pmoe_core::demos::primes::primes_stream())),
            "naturals" => Ok(Value::Coll(naturals(1))),
            other => Err(format!("unknown builtin target `{other}`")),
        },
        (None, None) => Err("one of --target or --target-builtin is required".into()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

/// Variables of a pattern in first-occurrence order; indexed names appear
/// once. Loop index variables are iteration machinery and are skipped.
fn pattern_vars(p: &Pat, out: &mut Vec<(String, bool)>) {
    fn push(out: &mut Vec<(String, bool)>, name: &str, indexed: bool) {
        if !out.iter().any(|(n, _)| n == name) {
            out.push((name.to_string(), indexed));
        }
    }
    match &**p {
        Pattern::Var(name) => push(out, name, false),
        Pattern::IndexedVar(name, _) => push(out, name, true),
        Pattern::And(ps) | Pattern::Or(ps) | Pattern::Tuple(ps) | Pattern::Seq(ps) => {
            for q in ps {
                pattern_vars(q, out);
            }
        }
        Pattern::Ctor(_, args) => {
            for q in args {
                pattern_vars(q, out);
            }
        }
        Pattern::Not(q) => pattern_vars(q, out),
        Pattern::Let { binder, body, .. } => {
            match binder {
                LetBinder::Scalar(name) => push(out, name, false),
                LetBinder::Indexed(name, _) => push(out, name, true),
            }
            pattern_vars(body, out);
        }
        Pattern::Loop {
            repeat,
            finish,
            end,
            ..
        } => {
            pattern_vars(repeat, out);
            if let LoopEnd::Pat(q) = end {
                pattern_vars(q, out);
            }
            pattern_vars(finish, out);
        }
        _ => {}
    }
}

/// The default body: a tuple of the pattern's variables. Indexed variables
/// render as a "name_key ↦ value" map listing.
fn default_body(pattern: &Pat) -> Expr {
    let mut vars = Vec::new();
    pattern_vars(pattern, &mut vars);
    Expr::host(move |env| {
        let mut parts = Vec::new();
        for (name, indexed) in &vars {
            if *indexed {
                let entries = env.indexed_entries(name);
                let rendered: Vec<String> = entries
                    .iter()
                    .map(|(k, v)| Ok(format!("{name}_{k} ↦ {}", print_value(v)?)))
                    .collect::<pmoe_core::Result<_>>()?;
                parts.push(Value::str(rendered.join(", ")));
            } else {
                parts.push(env.lookup_scalar(name)?);
            }
        }
        if parts.len() == 1 {
            Ok(parts.pop().expect("nonempty"))
        } else {
            Ok(Value::tuple(parts))
        }
    })
}

fn run_demo(args: &DemoArgs) -> Result<bool, String> {
    if args.list {
        for demo in pmoe_core::demos::registry() {
            println!("{:<20} {}", demo.name, demo.about);
        }
        return Ok(true);
    }
    let Some(name) = &args.name else {
        return Err("demo name required (or --list)".into());
    };
    let demo = pmoe_core::demos::find(name)
        .ok_or_else(|| format!("unknown demo `{name}`; try `pmoe demo --list`"))?;
    let lines = demo
        .run(args.take.map(|t| t as usize))
        .map_err(|e| e.to_string())?;
    for line in &lines {
        println!("{line}");
    }
    Ok(!lines.is_empty())
}
