//! Search for `d_1[n, k]`: the largest minimum distance among `[n, p^k]`
//! additive codes whose hull under a duality has rank one.
//!
//! Work is split into units: a pivot-column set of the canonical subspace
//! enumeration (exhaustive mode) or a chunk of seeded samples (randomized
//! mode). Units share only an [`Incumbent`], used for pruning in a way that
//! cannot change the merged result, so any scheduling of units over any
//! number of workers yields the same [`SearchResult`].

mod subspace;
mod table;
mod theory;

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};
use core::time::Duration;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::code::AdditiveCode;
use crate::duality::{check_budget, pow_saturating, Duality};
use crate::error::{Error, Hypothesis, Result};
use crate::fp::{FpMatrix, PrimeField};
use crate::packed::{min_weight_digits, min_weight_packed, Packing};
use crate::DEFAULT_BUDGET;

pub use subspace::{enumerate_subspaces, gaussian_binomial, SubspaceIter};
pub use table::{known_f4_entry, KnownEntry, KNOWN_MAX_N};
pub use theory::{d1_theoretical, singleton_bound, Theory};

use subspace::{binomial, unrank_pivots, ShardCursor};

/// Samples per randomized work unit.
pub const SAMPLE_CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomConfig {
    pub iterations: u64,
    pub seed: u64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { iterations: 100_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Randomized(RandomConfig),
    /// Exhaustive when the subspace count fits the budget, else randomized.
    Auto(RandomConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budgets {
    pub subspaces: u64,
    pub codewords: u64,
    /// Carried for callers that report it; never consulted by the search, so
    /// results do not depend on machine speed.
    pub wall_clock_hint: Option<Duration>,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { subspaces: DEFAULT_BUDGET, codewords: DEFAULT_BUDGET, wall_clock_hint: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub duality: Duality,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub budgets: Budgets,
}

impl SearchSpec {
    pub fn new(duality: Duality, n: usize, k: usize, mode: Mode) -> SearchSpec {
        SearchSpec { duality, n, k, mode, budgets: Budgets::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Exact(usize),
    LowerBound(usize),
    NoOneRankCode,
    /// Randomized search found no one-rank hull code.
    Unresolved,
}

impl Status {
    pub fn distance(self) -> Option<usize> {
        match self {
            Status::Exact(d) | Status::LowerBound(d) => Some(d),
            Status::NoOneRankCode | Status::Unresolved => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Exact(_) => "exact",
            Status::LowerBound(_) => "lower-bound",
            Status::NoOneRankCode => "none",
            Status::Unresolved => "unresolved",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    Randomized,
    /// Not run: even a single code exceeds the codeword budget.
    Skipped,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Randomized => "randomized",
            Strategy::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub status: Status,
    /// Best code found; first in enumeration (or sampling) order among ties.
    pub witness: Option<AdditiveCode>,
    /// Subspaces visited or samples drawn.
    pub enumerated: u64,
    pub strategy: Strategy,
    pub theory: Option<Theory>,
}

/// Best `(distance, unit)` seen so far, packed so that `fetch_max` prefers
/// larger distance and then the smaller unit index.
#[derive(Debug, Default)]
pub struct Incumbent(AtomicU64);

const UNIT_BITS: u32 = 48;
const UNIT_MASK: u64 = (1 << UNIT_BITS) - 1;

impl Incumbent {
    pub fn new() -> Incumbent {
        Incumbent(AtomicU64::new(0))
    }

    fn offer(&self, d: u32, unit: u64) {
        let packed = (d as u64) << UNIT_BITS | (UNIT_MASK - unit);
        self.0.fetch_max(packed, Ordering::Relaxed);
    }

    fn read(&self) -> Option<(u32, u64)> {
        let v = self.0.load(Ordering::Relaxed);
        (v != 0).then(|| ((v >> UNIT_BITS) as u32, UNIT_MASK - (v & UNIT_MASK)))
    }
}

/// What one unit of work found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitOutcome {
    best: Option<(u32, u64, Vec<u32>)>,
    visited: u64,
    hit_bound: bool,
    complete: bool,
}

/// A validated search, ready to run unit by unit.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    spec: SearchSpec,
    strategy: Strategy,
    units: u64,
    singleton: u32,
    theory: Option<Theory>,
}

impl SearchPlan {
    pub fn new(spec: SearchSpec) -> Result<SearchPlan> {
        let params = spec.duality.params();
        let (p, e) = (params.p(), params.e());
        let en = spec.n * e;
        if spec.n == 0 || spec.k == 0 || spec.k > en {
            return Err(Error::InvalidRange("need n >= 1 and 1 <= k <= en"));
        }
        if spec.budgets.subspaces == 0 || spec.budgets.codewords == 0 {
            return Err(Error::InvalidRange("budgets must be positive"));
        }
        check_budget("codewords", pow_saturating(p as u128, spec.k as u32), spec.budgets.codewords)?;
        let subspaces = gaussian_binomial(p, en, spec.k);
        let random = match spec.mode {
            Mode::Exhaustive => {
                check_budget("subspaces", subspaces, spec.budgets.subspaces)?;
                None
            }
            Mode::Randomized(r) => Some(r),
            Mode::Auto(r) => (subspaces > spec.budgets.subspaces as u128).then_some(r),
        };
        let (strategy, units) = match random {
            None => (Strategy::Exhaustive, binomial(en, spec.k) as u64),
            Some(r) => {
                if r.iterations == 0 {
                    return Err(Error::InvalidRange("iterations must be positive"));
                }
                (Strategy::Randomized, r.iterations.div_ceil(SAMPLE_CHUNK))
            }
        };
        if units > UNIT_MASK {
            return Err(Error::InvalidRange("too many work units"));
        }
        let theory = d1_theoretical(&spec.duality, spec.n, spec.k)?;
        let singleton = singleton_bound(spec.n, spec.k, e) as u32;
        Ok(SearchPlan { spec, strategy, units, singleton, theory })
    }

    pub fn spec(&self) -> &SearchSpec {
        &self.spec
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn units(&self) -> u64 {
        self.units
    }

    /// Runs one unit. Units may run in any order and concurrently.
    pub fn run_unit(&self, unit: u64, incumbent: &Incumbent) -> UnitOutcome {
        let mut run = UnitRun::new(self, unit);
        let params = self.spec.duality.params();
        let en = self.spec.n * params.e();
        match self.strategy {
            Strategy::Exhaustive => {
                let pivots = unrank_pivots(unit as u128, en, self.spec.k);
                let mut cursor = ShardCursor::new(params.p(), en, &pivots);
                while cursor.advance() {
                    if !run.visit(cursor.matrix(), incumbent) {
                        break;
                    }
                }
            }
            Strategy::Randomized => {
                let (Mode::Randomized(r) | Mode::Auto(r)) = self.spec.mode else {
                    unreachable!("randomized strategy without a seed")
                };
                let start = unit * SAMPLE_CHUNK;
                let count = SAMPLE_CHUNK.min(r.iterations - start);
                let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
                rng.set_stream(unit);
                let field = params.field();
                let k = self.spec.k;
                let mut data = vec![0u32; k * en];
                for _ in 0..count {
                    for x in data.iter_mut() {
                        *x = uniform_below(&mut rng, field.p());
                    }
                    let g = FpMatrix::from_vec(field, k, en, data.clone()).expect("shape");
                    let rref = g.rref();
                    let full = rref.rank == k;
                    let matrix = rref.matrix;
                    let ok =
                        if full { run.visit(&matrix.as_slice()[..k * en], incumbent) } else { run.skip(incumbent) };
                    if !ok {
                        break;
                    }
                }
            }
            Strategy::Skipped => {}
        }
        run.finish()
    }

    /// Merges unit outcomes (indexed by unit; `None` for units never run)
    /// and re-verifies the witness through [`AdditiveCode`].
    pub fn finish(&self, outcomes: &[Option<UnitOutcome>]) -> Result<SearchResult> {
        let mut enumerated = 0u64;
        let mut best: Option<(u32, &Vec<u32>)> = None;
        for unit in 0..self.units as usize {
            let o = outcomes
                .get(unit)
                .and_then(Option::as_ref)
                .filter(|o| o.complete)
                .expect("every unit before the first bound-reaching one must complete");
            enumerated += o.visited;
            if let Some((d, _, m)) = &o.best {
                if best.is_none_or(|(bd, _)| *d > bd) {
                    best = Some((*d, m));
                }
            }
            if o.hit_bound {
                break;
            }
        }
        let params = self.spec.duality.params();
        let witness = match best {
            Some((d, m)) => {
                let en = self.spec.n * params.e();
                let g = FpMatrix::from_vec(params.field(), self.spec.k, en, m.clone())?;
                let code = AdditiveCode::from_matrix(params, self.spec.n, &g)?;
                let hull_rank = code.hull_rank(&self.spec.duality)?;
                if code.k() != self.spec.k || hull_rank != 1 {
                    return Err(Hypothesis::Conclusion { expected: "one-rank", hull_rank }.into());
                }
                let found = code.min_distance_within(self.spec.budgets.codewords)?;
                if found != d as usize {
                    return Err(Error::TheoryDisagreement { theory: Some(d as usize), found: Some(found) });
                }
                Some(code)
            }
            None => None,
        };
        let d = witness.as_ref().map(|_| best.expect("witness").0 as usize);
        let status = match (self.strategy, d) {
            (Strategy::Exhaustive, Some(d)) => Status::Exact(d),
            (Strategy::Exhaustive, None) => Status::NoOneRankCode,
            (_, Some(d)) => Status::LowerBound(d),
            (_, None) => Status::Unresolved,
        };
        if self.strategy == Strategy::Exhaustive {
            if let Some(t) = self.theory {
                if t.distance() != d {
                    return Err(Error::TheoryDisagreement { theory: t.distance(), found: d });
                }
            }
        }
        Ok(SearchResult { status, witness, enumerated, strategy: self.strategy, theory: self.theory })
    }

    /// Runs every unit in order on the current thread.
    pub fn run_sequential(&self) -> Result<SearchResult> {
        let incumbent = Incumbent::new();
        let mut outcomes = Vec::new();
        for unit in 0..self.units {
            let o = self.run_unit(unit, &incumbent);
            let stop = o.hit_bound;
            outcomes.push(Some(o));
            if stop {
                break;
            }
        }
        self.finish(&outcomes)
    }
}

/// Uniform draw from `0..p` by rejection.
fn uniform_below(rng: &mut ChaCha8Rng, p: u32) -> u32 {
    let zone = u32::MAX - u32::MAX % p;
    loop {
        let x = rng.next_u32();
        if x < zone {
            return x % p;
        }
    }
}

/// How often a unit re-reads the shared incumbent.
const REFRESH: u64 = 256;

struct UnitRun<'a> {
    plan: &'a SearchPlan,
    unit: u64,
    eval: Evaluator,
    best: Option<(u32, u64, Vec<u32>)>,
    visited: u64,
    external: u32,
    hit_bound: bool,
    complete: bool,
}

impl<'a> UnitRun<'a> {
    fn new(plan: &'a SearchPlan, unit: u64) -> UnitRun<'a> {
        UnitRun {
            plan,
            unit,
            eval: Evaluator::new(&plan.spec.duality, plan.spec.n, plan.spec.k),
            best: None,
            visited: 0,
            external: 0,
            hit_bound: false,
            complete: true,
        }
    }

    /// Re-reads the incumbent. Returns `false` when a lower unit already
    /// reached the Singleton bound, making this unit irrelevant.
    fn refresh(&mut self, incumbent: &Incumbent) -> bool {
        if let Some((d, owner)) = incumbent.read() {
            if owner < self.unit && d >= self.plan.singleton {
                self.complete = false;
                return false;
            }
            // Ties go to the lower unit, so a lower owner's distance is
            // already unbeatable here; a higher owner's is beatable by a tie.
            self.external = match owner.cmp(&self.unit) {
                core::cmp::Ordering::Greater => d - 1,
                _ => d,
            };
        }
        true
    }

    fn skip(&mut self, incumbent: &Incumbent) -> bool {
        self.visited += 1;
        self.visited % REFRESH != 1 || self.refresh(incumbent)
    }

    fn visit(&mut self, g: &[u32], incumbent: &Incumbent) -> bool {
        let idx = self.visited;
        if !self.skip(incumbent) {
            return false;
        }
        let local = self.best.as_ref().map_or(0, |b| b.0);
        let floor = local.max(self.external);
        if self.eval.min_row_weight(g) <= floor || !self.eval.is_one_rank(g) {
            return true;
        }
        let d = self.eval.distance(g, floor);
        if d > floor {
            self.best = Some((d, idx, g.to_vec()));
            incumbent.offer(d, self.unit);
            if d >= self.plan.singleton {
                self.hit_bound = true;
                return false;
            }
        }
        true
    }

    fn finish(self) -> UnitOutcome {
        UnitOutcome { best: self.best, visited: self.visited, hit_bound: self.hit_bound, complete: self.complete }
    }
}

/// Hull-rank and distance checks on flat `k x en` generator matrices.
struct Evaluator {
    field: PrimeField,
    e: usize,
    k: usize,
    en: usize,
    /// Duality matrix, row-major.
    d: Vec<u32>,
    twisted: Vec<u32>,
    gram: Vec<u32>,
    packing: Option<Packing>,
    packed: Vec<u128>,
}

impl Evaluator {
    fn new(m: &Duality, n: usize, k: usize) -> Evaluator {
        let params = m.params();
        let e = params.e();
        let en = n * e;
        Evaluator {
            field: params.field(),
            e,
            k,
            en,
            d: m.matrix().as_slice().to_vec(),
            twisted: vec![0; k * en],
            gram: vec![0; k * k],
            packing: Packing::new(params.p(), e, n),
            packed: vec![0; k],
        }
    }

    fn min_row_weight(&self, g: &[u32]) -> u32 {
        g.chunks(self.en)
            .map(|row| row.chunks(self.e).filter(|b| b.iter().any(|&x| x != 0)).count() as u32)
            .min()
            .unwrap_or(0)
    }

    /// Whether the log-Gram matrix has rank exactly `k - 1`.
    fn is_one_rank(&mut self, g: &[u32]) -> bool {
        let (e, en, k) = (self.e, self.en, self.k);
        let p = self.field.p() as u64;
        // twisted_j = g_j with D^T applied blockwise, so g_i . twisted_j is
        // the pairing exponent of g_i against g_j.
        for j in 0..k {
            for t in 0..en / e {
                let block = &g[j * en + t * e..j * en + t * e + e];
                for c in 0..e {
                    let s: u64 = (0..e).map(|i| block[i] as u64 * self.d[c * e + i] as u64).sum();
                    self.twisted[j * en + t * e + c] = (s % p) as u32;
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                let s: u64 = g[i * en..(i + 1) * en]
                    .iter()
                    .zip(&self.twisted[j * en..(j + 1) * en])
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                self.gram[i * k + j] = (s % p) as u32;
            }
        }
        rank_in_place(self.field, &mut self.gram, k) + 1 == k
    }

    fn distance(&mut self, g: &[u32], floor: u32) -> u32 {
        let rows = g.chunks(self.en);
        match &self.packing {
            Some(pk) => {
                for (slot, row) in self.packed.iter_mut().zip(rows) {
                    *slot = pk.pack(row);
                }
                min_weight_packed(pk, &self.packed, floor)
            }
            None => {
                let digits: Vec<Vec<u32>> = rows.map(<[u32]>::to_vec).collect();
                min_weight_digits(self.field.p(), self.e, &digits, floor)
            }
        }
    }
}

/// Rank of a square `k x k` matrix, destroying it.
fn rank_in_place(f: PrimeField, a: &mut [u32], k: usize) -> usize {
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..k).find(|&r| a[r * k + col] != 0) else { continue };
        if piv != rank {
            for c in 0..k {
                a.swap(piv * k + c, rank * k + c);
            }
        }
        let inv = f.inv(a[rank * k + col]);
        for r in rank + 1..k {
            let factor = f.mul(a[r * k + col], inv);
            if factor != 0 {
                for c in col..k {
                    let v = f.mul(factor, a[rank * k + c]);
                    a[r * k + c] = f.sub(a[r * k + c], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Runs a search on the current thread.
pub fn d1_search(spec: SearchSpec) -> Result<SearchResult> {
    SearchPlan::new(spec)?.run_sequential()
}

/// One cell of a `d_1` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    pub result: SearchResult,
    pub singleton: usize,
    /// Reference value, present only for `F_4` under a non-symmetric duality.
    pub known: Option<KnownEntry>,
}

impl TableCell {
    /// Whether the result is consistent with the closed-form value.
    pub fn agrees_with_theory(&self) -> Option<bool> {
        consistent(self.result.status, self.result.theory?.distance())
    }

    /// Whether the result is consistent with the reference table.
    pub fn matches_known(&self) -> Option<bool> {
        consistent(self.result.status, self.known?.d)
    }

    pub fn within_singleton(&self) -> bool {
        self.result.status.distance().is_none_or(|d| d <= self.singleton)
    }
}

fn consistent(status: Status, expected: Option<usize>) -> Option<bool> {
    match status {
        Status::Exact(d) => Some(expected == Some(d)),
        Status::NoOneRankCode => Some(expected.is_none()),
        Status::LowerBound(d) => Some(expected.is_some_and(|e| d <= e)),
        Status::Unresolved => None,
    }
}

/// Cells `(n, k)` for `1 <= n <= n_max`, `1 <= k <= min(k_max, en)`, each in
/// [`Mode::Auto`].
pub fn table_specs(m: &Duality, n_max: usize, k_max: usize, budgets: Budgets, random: RandomConfig) -> Vec<SearchSpec> {
    let e = m.params().e();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=k_max.min(n * e) {
            out.push(SearchSpec { duality: m.clone(), n, k, mode: Mode::Auto(random), budgets });
        }
    }
    out
}

/// Wraps a finished search as a table cell. A search refused for its
/// codeword budget becomes an unresolved, skipped cell.
pub fn table_cell(spec: &SearchSpec, result: Result<SearchResult>) -> Result<TableCell> {
    let params = spec.duality.params();
    let result = match result {
        Ok(r) => r,
        Err(Error::BudgetExceeded { what: "codewords", .. }) => SearchResult {
            status: Status::Unresolved,
            witness: None,
            enumerated: 0,
            strategy: Strategy::Skipped,
            theory: d1_theoretical(&spec.duality, spec.n, spec.k)?,
        },
        Err(err) => return Err(err),
    };
    let f4_nonsymmetric = params.p() == 2 && params.e() == 2 && !spec.duality.is_symmetric();
    Ok(TableCell {
        n: spec.n,
        k: spec.k,
        result,
        singleton: singleton_bound(spec.n, spec.k, params.e()),
        known: if f4_nonsymmetric { known_f4_entry(spec.n, spec.k) } else { None },
    })
}

/// Sequential table over all cells of [`table_specs`].
pub fn table_report(
    m: &Duality,
    n_max: usize,
    k_max: usize,
    budgets: Budgets,
    random: RandomConfig,
) -> Result<Vec<TableCell>> {
    table_specs(m, n_max, k_max, budgets, random).iter().map(|spec| table_cell(spec, d1_search(spec.clone()))).collect()
}
