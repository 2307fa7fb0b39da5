use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use nimors::theory::GraphClass;
use nimors::Parallelism;
use nimors_cli::api::{self, AppState};
use nimors_cli::commands::{self, CensusArgs, SolverOptions};
use nimors_cli::spec::{self, GraphSpec};

#[derive(Parser)]
#[command(name = "nimors", version, about = "Solve, tabulate and play Graph Nimors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Nim value and outcome class of one graph.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also list every move with the value of its result.
        #[arg(long)]
        analyze: bool,
        /// Skip the closed-form shortcuts and search everything.
        #[arg(long)]
        no_fast_paths: bool,
        #[arg(long, value_name = "HOST:PORT")]
        cache: Option<SocketAddr>,
    },
    /// Tabulate Nim values of biconnected graphs on N vertices and diff
    /// against the reference tables. Exits 1 on any difference.
    Census {
        n: usize,
        /// graph6 file to read instead of the built-in enumerator (n <= 8).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Reference data file; defaults to the bundled tables.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Write the distribution here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        work: WorkArgs,
    },
    /// Check the parity heuristic (value = edges mod 2) over a graph class.
    Scan {
        /// girth5, cubic-trianglefree, property-s-odd, k3q or all.
        class: GraphClass,
        n_max: usize,
        /// graph6 file to scan instead of the built-in generators.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        work: WorkArgs,
    },
    /// Run the shared memo cache server.
    ServeCache {
        #[arg(long, env = "NIMORS_CACHE_BIND", default_value = "127.0.0.1:7878")]
        bind: String,
        /// Append-only log replayed at startup.
        #[arg(long, env = "NIMORS_CACHE_PERSIST")]
        persist: Option<PathBuf>,
    },
    /// Run the HTTP game server.
    ServeGame {
        #[arg(long, env = "NIMORS_GAME_BIND", default_value = "127.0.0.1:8080")]
        bind: String,
        /// Hide move evaluations from players.
        #[arg(long)]
        no_hints: bool,
        #[arg(long, value_name = "HOST:PORT")]
        cache: Option<SocketAddr>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// Edge list such as 0-1,1-2,2-0.
    #[arg(long)]
    edges: Option<String>,
    /// Named family and its parameters, e.g. `--family cycle 5`.
    #[arg(long, num_args = 1.., value_name = "NAME ARGS")]
    family: Option<Vec<String>>,
}

#[derive(Args)]
struct WorkArgs {
    /// Worker threads; 0 uses every CPU, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_name = "HOST:PORT")]
    cache: Option<SocketAddr>,
}

impl GraphArgs {
    fn spec(&self) -> anyhow::Result<GraphSpec> {
        if let Some(g6) = &self.g6 {
            return Ok(GraphSpec::Graph6(g6.clone()));
        }
        if let Some(edges) = &self.edges {
            return spec::parse_edges(edges, None);
        }
        if let Some(words) = &self.family {
            let (name, rest) = words.split_first().context("--family needs a name")?;
            let args = rest
                .iter()
                .map(|a| a.parse::<usize>().with_context(|| format!("bad family argument {a:?}")))
                .collect::<anyhow::Result<_>>()?;
            return Ok(GraphSpec::Family(spec::Family { name: name.clone(), args }));
        }
        bail!("one of --g6, --edges, --family is required")
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve { graph, analyze, no_fast_paths, cache } => {
            let opts = SolverOptions { cache, fast_paths: !no_fast_paths };
            print!("{}", commands::solve(&graph.spec()?, analyze, &opts)?);
        }
        Command::Census { n, input, reference, output, work } => {
            let opts = SolverOptions { cache: work.cache, fast_paths: true };
            let args = CensusArgs { n, input, reference, parallelism: Parallelism::from_jobs(work.jobs) };
            let out = commands::census(&args, &opts)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &out.distribution).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{}", out.distribution),
            }
            print!("{}", out.report);
            if !out.matches {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Scan { class, n_max, input, work } => {
            let opts = SolverOptions { cache: work.cache, fast_paths: true };
            let parallelism = Parallelism::from_jobs(work.jobs);
            print!("{}", commands::scan(class, n_max, input.as_ref(), parallelism, &opts)?);
        }
        Command::ServeCache { bind, persist } => {
            let handle = nimors_cache::server::spawn(bind.as_str(), persist.as_deref())
                .with_context(|| format!("starting cache server on {bind}"))?;
            eprintln!("cache listening on {}", handle.local_addr());
            handle.wait();
        }
        Command::ServeGame { bind, no_hints, cache } => {
            let opts = SolverOptions { cache, fast_paths: true };
            let state = AppState::new(opts.build(), !no_hints);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(&bind).await.with_context(|| format!("binding {bind}"))?;
                eprintln!("game server listening on {}", listener.local_addr()?);
                axum::serve(listener, api::router(state))
                    .with_graceful_shutdown(async {
                        let _ = tokio::signal::ctrl_c().await;
                    })
                    .await?;
                anyhow::Ok(())
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
