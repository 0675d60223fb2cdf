use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use qpkit::io::{parse_input, Input};
use qpkit::mclass::{ClassDb, DEFAULT_CAP};
use qpkit::polygon::build_polygon_tree;
use qpkit_cli::commands;
use qpkit_cli::service::{router, AppState};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "qpkit", version, about = "Quivers with potentials, polygon trees and their singularity invariants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basis and Cartan matrix of the truncated Jacobian algebra.
    Jacobian {
        input: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Print a table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Build or check polygon-tree quivers.
    PolygonTree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Mutation type and representation type.
    Classify {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Breadth-first exploration of the mutation class.
    ExploreClass {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// The invariant d = m - 3N + d_Q and its Nakayama model.
    Singularity { input: PathBuf },
    /// Replay the mutation/surgery chain down to one cycle.
    Replay {
        input: PathBuf,
        /// Write the full trace with snapshots here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Stable category of the selfinjective Nakayama algebra N_d.
    Nakayama { d: usize },
    /// Mutate at a sequence of vertices.
    Mutate {
        input: PathBuf,
        vertices: Vec<String>,
        /// Matrix mutation of the underlying quiver only.
        #[arg(long)]
        fz: bool,
    },
    /// Canonical code or Graphviz rendering.
    Render {
        input: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Sessions are loaded from and saved to this JSON file.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        budget_ms: u64,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Build the QP of a polygon-tree or floriated spec.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Orientation, decomposition and simple-ness report.
    Check { input: PathBuf },
}

/// Reads a file, or stdin for `-`.
fn read_input(path: &Path) -> Result<Input> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(parse_input(&text)?)
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => {
            // a closed pipe (`| head`) is not an error worth a panic
            if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Jacobian { input, max_degree, table } => {
            let input = read_input(&input)?;
            if table {
                print!("{}", commands::jacobian_table(&input, max_degree)?);
            } else {
                emit(&commands::jacobian(&input, max_degree)?, None)?;
            }
        }
        Cmd::PolygonTree { cmd: TreeCmd::Build { spec, output } } => {
            let qp = match read_input(&spec)? {
                Input::Tree(s) => build_polygon_tree(&s)?,
                i @ Input::Floriated(_) => i.to_qp()?,
                _ => bail!("expected a polygon-tree or floriated spec"),
            };
            emit(&serde_json::to_value(qp.to_raw())?, output.as_deref())?;
        }
        Cmd::PolygonTree { cmd: TreeCmd::Check { input } } => emit(&commands::polygon_check(&read_input(&input)?)?, None)?,
        Cmd::Classify { input, cap } => {
            let q = read_input(&input)?.to_quiver()?;
            emit(&commands::classify(&q, ClassDb::global(), cap)?, None)?;
        }
        Cmd::ExploreClass { input, cap } => emit(&commands::explore(&read_input(&input)?.to_quiver()?, cap)?, None)?,
        Cmd::Singularity { input } => emit(&commands::singularity(&read_input(&input)?)?, None)?,
        Cmd::Replay { input, trace } => {
            let t = commands::replay(&read_input(&input)?)?;
            if let Some(p) = trace {
                std::fs::write(&p, t.to_json_pretty()).with_context(|| format!("writing {}", p.display()))?;
            }
            println!("terminal cycle {} after {} steps ({} mutations)", t.terminal_cycle, t.steps.len(), t.mutation_count());
        }
        Cmd::Nakayama { d } => emit(&commands::nakayama(d)?, None)?,
        Cmd::Mutate { input, vertices, fz } => emit(&commands::mutate(&read_input(&input)?, &vertices, fz)?, None)?,
        Cmd::Render { input, dot } => {
            let q = read_input(&input)?.to_quiver()?;
            if dot {
                print!("{}", q.to_dot());
            } else {
                println!("{}", commands::canonical(&q)?);
            }
        }
        Cmd::Serve { port, state, budget_ms } => serve(port, state, Duration::from_millis(budget_ms))?,
    }
    Ok(())
}

#[tokio::main]
async fn serve(port: u16, state_file: Option<PathBuf>, budget: Duration) -> Result<()> {
    let state = AppState::new(budget);
    if let Some(p) = state_file.as_deref().filter(|p| p.exists()) {
        let n = state.load(p).await?;
        eprintln!("restored {n} sessions from {}", p.display());
    }
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await.with_context(|| format!("binding {addr}"))?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, router(state.clone()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    if let Some(p) = state_file {
        let n = state.save(&p).await?;
        eprintln!("saved {n} sessions to {}", p.display());
    }
    Ok(())
}
