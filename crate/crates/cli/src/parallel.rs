//! Fans search units out over a rayon pool.

use addhull_core::search::{
    table_cell, table_specs, Budgets, Incumbent, RandomConfig, SearchPlan, SearchResult, SearchSpec, TableCell,
};
use addhull_core::{Duality, Result};
use rayon::prelude::*;
use rayon::ThreadPool;
use std::time::{Duration, Instant};

/// A pool with `threads` workers; 0 picks rayon's default.
pub fn pool(threads: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("failed to start worker threads")
}

/// Runs every unit of `plan` on `pool` against one shared incumbent. The
/// result does not depend on the number of workers.
pub fn run_plan(plan: &SearchPlan, pool: &ThreadPool) -> Result<SearchResult> {
    let incumbent = Incumbent::new();
    let outcomes: Vec<_> =
        pool.install(|| (0..plan.units()).into_par_iter().map(|u| Some(plan.run_unit(u, &incumbent))).collect());
    plan.finish(&outcomes)
}

#[derive(Debug, Clone)]
pub struct Timed<T> {
    pub value: T,
    pub elapsed: Duration,
}

pub fn search(spec: SearchSpec, pool: &ThreadPool) -> Result<Timed<SearchResult>> {
    let start = Instant::now();
    let plan = SearchPlan::new(spec)?;
    let value = run_plan(&plan, pool)?;
    Ok(Timed { value, elapsed: start.elapsed() })
}

/// Every cell of the `d_1` table, each searched in parallel.
pub fn table(
    m: &Duality,
    n_max: usize,
    k_max: usize,
    budgets: Budgets,
    random: RandomConfig,
    pool: &ThreadPool,
) -> Result<Timed<Vec<TableCell>>> {
    let start = Instant::now();
    let value = table_specs(m, n_max, k_max, budgets, random)
        .into_iter()
        .map(|spec| {
            let result = SearchPlan::new(spec.clone()).and_then(|plan| run_plan(&plan, pool));
            table_cell(&spec, result)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Timed { value, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use addhull_core::search::{d1_search, table_report, Mode};

    fn n1() -> Duality {
        Duality::from_rows(2, &[[1i64, 1], [0, 1]]).unwrap()
    }

    #[test]
    fn parallel_equals_sequential() {
        let pools = [pool(1), pool(4)];
        for (n, k, mode) in [
            (4, 3, Mode::Exhaustive),
            (4, 5, Mode::Exhaustive),
            (3, 2, Mode::Exhaustive),
            (6, 4, Mode::Randomized(RandomConfig { iterations: 5000, seed: 11 })),
        ] {
            let spec = SearchSpec::new(n1(), n, k, mode);
            let reference = d1_search(spec.clone()).unwrap();
            for p in &pools {
                assert_eq!(search(spec.clone(), p).unwrap().value, reference, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn parallel_table_equals_sequential() {
        let budgets = Budgets::default();
        let random = RandomConfig::default();
        let seq = table_report(&n1(), 3, 6, budgets, random).unwrap();
        assert_eq!(table(&n1(), 3, 6, budgets, random, &pool(3)).unwrap().value, seq);
    }
}
