//! The `solve`, `census` and `scan` subcommands, returning their primary
//! output as text so it can be checked byte for byte.

use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::PathBuf;

use anyhow::Context;
use nimors::census::{self, compare_reference, ReferenceTable, Scope};
use nimors::engine::SolverConfig;
use nimors::theory::{self, GraphClass};
use nimors::{graph6, Graph, Outcome, Parallelism, Solver};
use nimors_cache::CacheClient;

use crate::spec::GraphSpec;

/// How workers build their solvers.
#[derive(Clone, Debug, Default)]
pub struct SolverOptions {
    pub cache: Option<SocketAddr>,
    pub fast_paths: bool,
}

impl SolverOptions {
    pub fn local() -> SolverOptions {
        SolverOptions { cache: None, fast_paths: true }
    }

    /// A solver, attached to the cache server when one is configured and
    /// reachable.
    pub fn build(&self) -> Solver {
        let config = SolverConfig { fast_paths: self.fast_paths, ..SolverConfig::default() };
        let solver = Solver::new(config);
        match self.cache {
            Some(addr) => match CacheClient::connect(addr) {
                Ok(client) => solver.with_remote(Box::new(client)),
                Err(e) => {
                    log::warn!("cache {addr} unreachable ({e}); solving locally");
                    solver
                }
            },
            None => solver,
        }
    }
}

pub fn solve(spec: &GraphSpec, analyze: bool, opts: &SolverOptions) -> anyhow::Result<String> {
    let g = spec.resolve()?;
    let mut solver = opts.build();
    let value = solver.nim_value(&g);
    let mut out = String::new();
    writeln!(out, "graph6 {}", graph6::encode(&g))?;
    writeln!(out, "vertices {}", g.n())?;
    writeln!(out, "edges {}", g.m())?;
    writeln!(out, "value {value}")?;
    writeln!(out, "outcome {}", Outcome::of(value).letter())?;
    if analyze {
        let analysis = solver.analyze(&g);
        writeln!(out, "# move value")?;
        for (mv, v) in analysis.per_move {
            writeln!(out, "{} {} {v}", mv.action.as_str(), mv.edge)?;
        }
    }
    Ok(out)
}

pub struct CensusArgs {
    pub n: usize,
    pub input: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub parallelism: Parallelism,
}

pub struct CensusOutput {
    pub distribution: String,
    pub report: String,
    pub matches: bool,
}

/// Tallies biconnected graphs on `n` vertices, from the built-in enumerator
/// or a graph6 file, and diffs the result against the reference for that `n`.
pub fn census(args: &CensusArgs, opts: &SolverOptions) -> anyhow::Result<CensusOutput> {
    let reference = match &args.reference {
        Some(p) => ReferenceTable::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => ReferenceTable::bundled(),
    };
    let graphs: Vec<Graph> = match &args.input {
        None => census::enumerate_biconnected(args.n)?,
        Some(path) => {
            let mut kept = Vec::new();
            let mut skipped = 0usize;
            for g in census::ingest_graph6(path).with_context(|| format!("opening {}", path.display()))? {
                let g = g?;
                if g.n() == args.n && g.is_biconnected() {
                    kept.push(g);
                } else {
                    skipped += 1;
                }
            }
            if skipped > 0 {
                log::warn!("skipped {skipped} graphs that are not biconnected on {} vertices", args.n);
            }
            kept
        }
    };
    let dist = census::distribution(&graphs, args.parallelism, &|| opts.build());
    let diff = compare_reference(&dist, &reference, &Scope::vertices([args.n]));
    let mut report = String::new();
    writeln!(report, "graphs {}", graphs.len())?;
    writeln!(report, "diff rows {}", diff.lines.len())?;
    if !diff.is_empty() {
        writeln!(report, "# n m value expected actual")?;
        report.push_str(&diff.to_text());
    }
    Ok(CensusOutput { distribution: dist.to_text(), report, matches: diff.is_empty() })
}

pub fn scan(
    class: GraphClass,
    n_max: usize,
    input: Option<&PathBuf>,
    parallelism: Parallelism,
    opts: &SolverOptions,
) -> anyhow::Result<String> {
    let make = || opts.build();
    let report = match input {
        Some(path) => {
            let source = census::ingest_graph6(path).with_context(|| format!("opening {}", path.display()))?;
            theory::scan_class(class, n_max, source, parallelism, &make)?
        }
        None => {
            let source = census::class_source(class, n_max)?;
            theory::scan_class(class, n_max, source.into_iter().map(Ok), parallelism, &make)?
        }
    };
    Ok(report.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::Family;

    fn family(name: &str, args: &[usize]) -> GraphSpec {
        GraphSpec::Family(Family { name: name.into(), args: args.to_vec() })
    }

    #[test]
    fn solve_examples() {
        let out = solve(&family("cycle", &[3]), false, &SolverOptions::local()).unwrap();
        assert!(out.contains("value 2\noutcome N\n"), "{out}");
        let out = solve(&family("petersen", &[]), false, &SolverOptions::local()).unwrap();
        assert!(out.contains("value 1\noutcome N\n"));
        let out = solve(&GraphSpec::Graph6("?".into()), true, &SolverOptions::local()).unwrap();
        assert_eq!(out, "graph6 ?\nvertices 0\nedges 0\nvalue 0\noutcome P\n# move value\n");
    }

    #[test]
    fn analysis_table() {
        let out = solve(&family("cycle", &[3]), true, &SolverOptions::local()).unwrap();
        let rows: Vec<&str> = out.lines().skip_while(|l| !l.starts_with('#')).skip(1).collect();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0], "delete 0-1 0");
        assert_eq!(rows[1], "contract 0-1 1");
    }
}
