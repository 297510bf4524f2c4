//! Command-line front end: analyze / graph / validate / census over a JSON
//! config. Exit codes: 0 success (validate: reconciliation passed),
//! 1 reconciliation failure, 2 input or processing error.

use clap::{Parser, Subcommand, ValueEnum};
use ecdyn::curve::ClassTag;
use ecdyn::dynamics::build_graph;
use ecdyn::predictor::{predict, reconcile};
use ecdyn::report;
use ecdyn::{load_config, Analysis};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ecdyn", version, about = "Functional graphs of elliptic-curve endomorphisms: brute force vs. algebraic prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    A,
    B,
    All,
}

impl ClassArg {
    fn tag(self) -> Option<ClassTag> {
        match self {
            ClassArg::A => Some(ClassTag::A),
            ClassArg::B => Some(ClassTag::B),
            ClassArg::All => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured tasks (predict / brute / reconcile) and emit one JSON report.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Build the functional graph and emit deterministic DOT.
    Graph {
        #[arg(long)]
        config: PathBuf,
        /// Write the DOT file here instead of stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// `all` colors vertices by class; `a`/`b` highlight one class.
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Predict, brute-force and reconcile; exit 0 iff every item passes.
    Validate {
        #[arg(long)]
        config: PathBuf,
        /// Also write the full JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print cycle-length and tree-shape tables from the brute-force graph.
    Census {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn emit(text: &str, out: &Option<PathBuf>) -> ecdyn::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn warn_all(analysis: &Analysis) {
    for w in &analysis.warnings {
        eprintln!("warning: {w}");
    }
}

fn run() -> ecdyn::Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { config, out, threads } => {
            let analysis = load_config(&config)?;
            warn_all(&analysis);
            use ecdyn::config::Task;
            let wants_reconcile = analysis.config.wants(Task::Reconcile);
            let wants_brute = analysis.config.wants(Task::Brute) || wants_reconcile;
            let wants_predict = analysis.config.wants(Task::Predict) || wants_reconcile;
            let prediction = if wants_predict {
                Some(predict(&analysis.curve, &analysis.endo, &analysis.order, &analysis.pi)?)
            } else {
                None
            };
            let graph = if wants_brute {
                Some(build_graph(&analysis.curve, &analysis.endo, threads)?)
            } else {
                None
            };
            let rec = match (&prediction, &graph) {
                (Some(p), Some(g)) if wants_reconcile => Some(reconcile(p, g)),
                _ => None,
            };
            let json = report::JsonReport {
                header: report::header_json(&analysis),
                prediction: prediction
                    .as_ref()
                    .map(|p| report::prediction_json(&analysis, p)),
                brute: graph.as_ref().map(report::brute_json),
                reconcile: rec.as_ref().map(report::reconcile_json),
            };
            emit(&serde_json::to_string_pretty(&json).expect("report serializes"), &out)?;
            Ok(0)
        }
        Command::Graph { config, dot, class, threads } => {
            let analysis = load_config(&config)?;
            warn_all(&analysis);
            let graph = build_graph(&analysis.curve, &analysis.endo, threads)?;
            let color = class == ClassArg::All || class == ClassArg::A || class == ClassArg::B;
            let text = graph.export_dot(&analysis.field, color);
            emit(&text, &dot)?;
            Ok(0)
        }
        Command::Validate { config, out, threads } => {
            let analysis = load_config(&config)?;
            warn_all(&analysis);
            let prediction =
                predict(&analysis.curve, &analysis.endo, &analysis.order, &analysis.pi)?;
            let graph = build_graph(&analysis.curve, &analysis.endo, threads)?;
            let rec = reconcile(&prediction, &graph);
            for item in &rec.items {
                if item.passed {
                    println!("[PASS] {}: {}", item.name, item.actual);
                } else {
                    println!(
                        "[FAIL] {}: predicted {} but brute force found {}",
                        item.name, item.expected, item.actual
                    );
                }
            }
            if let Some(path) = &out {
                let json = report::JsonReport {
                    header: report::header_json(&analysis),
                    prediction: Some(report::prediction_json(&analysis, &prediction)),
                    brute: Some(report::brute_json(&graph)),
                    reconcile: Some(report::reconcile_json(&rec)),
                };
                std::fs::write(path, serde_json::to_string_pretty(&json).expect("serializes"))?;
            }
            println!("verdict: {}", if rec.passed { "pass" } else { "fail" });
            Ok(if rec.passed { 0 } else { 1 })
        }
        Command::Census { config, class, threads } => {
            let analysis = load_config(&config)?;
            warn_all(&analysis);
            let graph = build_graph(&analysis.curve, &analysis.endo, threads)?;
            print!("{}", report::census_text(&graph, class.tag()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
