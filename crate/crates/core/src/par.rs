//! Batch solving across worker threads.
//!
//! Each worker owns a private [`Solver`] (and so a private local table);
//! any remote cache is attached by the factory. Without the `parallel`
//! feature every batch runs on the calling thread.

use crate::engine::{NimValue, Solver};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Sequential,
    /// `jobs == 0` means one worker per available CPU.
    Parallel { jobs: usize },
}

impl Parallelism {
    pub fn from_jobs(jobs: usize) -> Parallelism {
        if jobs == 1 {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel { jobs }
        }
    }
}

/// Values of `graphs`, in input order.
pub fn solve_all(
    graphs: &[Graph],
    parallelism: Parallelism,
    make_solver: &(dyn Fn() -> Solver + Sync),
) -> Vec<NimValue> {
    match parallelism {
        Parallelism::Sequential => solve_sequential(graphs, make_solver),
        Parallelism::Parallel { jobs } => solve_parallel(graphs, jobs, make_solver),
    }
}

fn solve_sequential(graphs: &[Graph], make_solver: &(dyn Fn() -> Solver + Sync)) -> Vec<NimValue> {
    if graphs.is_empty() {
        return Vec::new();
    }
    let mut solver = make_solver();
    graphs.iter().map(|g| solver.nim_value(g)).collect()
}

#[cfg(not(feature = "parallel"))]
fn solve_parallel(graphs: &[Graph], _jobs: usize, make_solver: &(dyn Fn() -> Solver + Sync)) -> Vec<NimValue> {
    solve_sequential(graphs, make_solver)
}

#[cfg(feature = "parallel")]
fn solve_parallel(graphs: &[Graph], jobs: usize, make_solver: &(dyn Fn() -> Solver + Sync)) -> Vec<NimValue> {
    use std::sync::Mutex;

    use rayon::prelude::*;

    if graphs.is_empty() {
        return Vec::new();
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            log::warn!("cannot start worker pool ({e}); solving sequentially");
            return solve_sequential(graphs, make_solver);
        }
    };
    // One lazily built solver per worker thread, indexed by thread id.
    let workers: Vec<Mutex<Option<Solver>>> = (0..pool.current_num_threads()).map(|_| Mutex::new(None)).collect();
    pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let idx = rayon::current_thread_index().unwrap_or(0);
                let mut slot = workers[idx].lock().unwrap_or_else(|e| e.into_inner());
                slot.get_or_insert_with(make_solver).nim_value(g)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::SolverConfig;
    use crate::graph::families::*;

    #[test]
    fn modes_agree() {
        let graphs: Vec<Graph> =
            (3..8).map(cycle).chain((2..6).map(complete)).chain([petersen(), triangle_pendant()]).collect();
        let make = || Solver::new(SolverConfig::default().with_slots(1 << 12));
        let seq = solve_all(&graphs, Parallelism::Sequential, &make);
        for jobs in [0, 2, 3] {
            assert_eq!(solve_all(&graphs, Parallelism::Parallel { jobs }, &make), seq);
        }
        assert!(solve_all(&[], Parallelism::Parallel { jobs: 2 }, &make).is_empty());
    }
}
