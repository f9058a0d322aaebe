//! Command-line driver.
//!
//! Exit status: 0 on success, 1 on a domain error (`error[Name]: …` on
//! stderr), 2 on a usage, file or syntax error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use dsrw::text::{
    export_dot_named, parse_graph_document, parse_rules, serialize_graph, GraphDocument,
};
use dsrw::{find_lrr_matches, gr_step, lrr_step, normalize, Error, Graph, NodeId, RewriteSystem};

#[derive(Parser)]
#[command(name = "dsrw", version, about = "Rewrite data-structure graphs")]
struct Cli {
    /// Print results as Graphviz DOT instead of graph documents.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph, then print it back.
    Check { graph: PathBuf },
    /// List the matches of a rule, one `nodeL -> nodeU` line per node.
    Match {
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        rule: String,
        graph: PathBuf,
    },
    /// Apply one rewrite step.
    Apply {
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        rule: String,
        /// Index of the match to use, in `match` order.
        #[arg(long = "match", default_value_t = 0)]
        index: usize,
        graph: PathBuf,
    },
    /// Redirect every edge targeting one node towards another.
    Redirect {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        graph: PathBuf,
    },
    /// Rewrite until no rule applies.
    Normalize {
        #[arg(long)]
        rules: PathBuf,
        /// Maximum number of steps; overrides the rules file.
        #[arg(long)]
        fuel: Option<usize>,
        /// Comma-separated roots; unreachable nodes are dropped after every
        /// step. Overrides the rules file.
        #[arg(long, value_delimiter = ',')]
        trim: Option<Vec<String>>,
        graph: PathBuf,
    },
    /// Print a graph as Graphviz DOT.
    Dot { graph: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_syntax() {
            Failure::Usage(format!("error[{}]: {e}", e.name()))
        } else {
            Failure::Domain(e)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("error: cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphDocument, Failure> {
    let text = read(path)?;
    parse_graph_document(&text).map_err(|e| located(path, e))
}

fn load_rules(path: &Path) -> Result<RewriteSystem, Failure> {
    let text = read(path)?;
    parse_rules(&text).map_err(|e| located(path, e))
}

fn located(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(msg) => Failure::Usage(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn render(dot: bool, name: &str, graph: &Graph) -> String {
    if dot {
        export_dot_named(name, graph)
    } else {
        serialize_graph(name, graph)
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Check { graph } => {
            let doc = load_graph(&graph)?;
            Ok(render(cli.dot, &doc.name, &doc.graph))
        }
        Command::Dot { graph } => {
            let doc = load_graph(&graph)?;
            Ok(export_dot_named(&doc.name, &doc.graph))
        }
        Command::Match { rules, rule, graph } => {
            let system = load_rules(&rules)?;
            let doc = load_graph(&graph)?;
            let rule = system.rule(&rule)?;
            let mut out = String::new();
            for (k, m) in find_lrr_matches(rule, &Arc::new(doc.graph)).iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("// match {k}\n"));
                for (l, u) in m.mu.map() {
                    out.push_str(&format!("{l} -> {u}\n"));
                }
            }
            Ok(out)
        }
        Command::Apply {
            rules,
            rule,
            index,
            graph,
        } => {
            let system = load_rules(&rules)?;
            let doc = load_graph(&graph)?;
            let rule = system.rule(&rule)?;
            let host = Arc::new(doc.graph);
            let m = find_lrr_matches(rule, &host)
                .into_iter()
                .nth(index)
                .ok_or_else(|| Error::NoMatch {
                    rule: rule.name().to_string(),
                    index,
                })?;
            let step = lrr_step(rule, &m)?;
            Ok(render(cli.dot, &doc.name, step.result()))
        }
        Command::Redirect { from, to, graph } => {
            let doc = load_graph(&graph)?;
            let step = gr_step(&Arc::new(doc.graph), &from.into(), &to.into())?;
            Ok(render(cli.dot, &doc.name, step.result()))
        }
        Command::Normalize {
            rules,
            fuel,
            trim,
            graph,
        } => {
            let mut system = load_rules(&rules)?;
            let doc = load_graph(&graph)?;
            if let Some(f) = fuel {
                system.fuel = f;
            }
            if let Some(roots) = trim {
                system.trim_roots = Some(roots.into_iter().map(NodeId::from).collect());
            }
            let n = normalize(&system, &Arc::new(doc.graph))?;
            Ok(render(cli.dot, &doc.name, &n.graph))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
