//! JSON, CSV and text renderings of results.

use crate::format::write_code;
use addhull_core::search::{KnownEntry, SearchResult, Status, TableCell, Theory};
use addhull_core::{AdditiveCode, Duality, FpMatrix, HullReport, PrimePowerParams};
use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FieldJson {
    pub p: u32,
    pub e: usize,
}

impl From<PrimePowerParams> for FieldJson {
    fn from(params: PrimePowerParams) -> Self {
        FieldJson { p: params.p(), e: params.e() }
    }
}

pub fn matrix_rows(m: &FpMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Rows of `e n` digits as encoded coordinates.
pub fn encode_digit_rows(params: PrimePowerParams, m: &FpMatrix) -> Vec<Vec<u64>> {
    let (p, e) = (params.p() as u64, params.e());
    (0..m.rows())
        .map(|r| m.row(r).chunks(e).map(|block| block.iter().rev().fold(0, |acc, &d| acc * p + d as u64)).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TheoryJson {
    pub status: &'static str,
    pub d: Option<usize>,
}

fn theory_json(t: Option<Theory>) -> Option<TheoryJson> {
    t.map(|t| TheoryJson {
        status: match t {
            Theory::Exact(_) => "exact",
            Theory::NoOneRankCode => "none",
        },
        d: t.distance(),
    })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct HullJson {
    pub schema: u32,
    pub command: &'static str,
    pub field: FieldJson,
    pub n: usize,
    pub k: usize,
    pub hull_rank: usize,
    pub class: &'static str,
    pub log_gram: Vec<Vec<u32>>,
    pub coefficients: Vec<Vec<u32>>,
    pub generators: Vec<Vec<u64>>,
}

impl HullJson {
    pub fn new(c: &AdditiveCode, log_gram: &FpMatrix, h: &HullReport) -> HullJson {
        HullJson {
            schema: SCHEMA,
            command: "hull",
            field: c.params().into(),
            n: c.n(),
            k: c.k(),
            hull_rank: h.hull_rank,
            class: h.class.label(),
            log_gram: matrix_rows(log_gram),
            coefficients: matrix_rows(&h.coefficients),
            generators: encode_digit_rows(c.params(), &h.generators),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("hull rank {}, {}\n", self.hull_rank, self.class);
        writeln!(out, "code [{}, {}^{}]", self.n, self.field.p, self.k).unwrap();
        if !self.generators.is_empty() {
            out.push_str("hull generators:\n");
            for row in &self.generators {
                out.push_str(&join(row));
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CodeJson {
    pub schema: u32,
    pub command: &'static str,
    pub field: FieldJson,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub rows: Vec<Vec<u64>>,
}

impl CodeJson {
    pub fn new(command: &'static str, c: &AdditiveCode, d: Option<usize>) -> CodeJson {
        CodeJson { schema: SCHEMA, command, field: c.params().into(), n: c.n(), k: c.k(), d, rows: c.encoded_rows() }
    }
}

/// `[n, p^k, d]`, or `[n, p^k]` without a distance.
pub fn parameters(c: &AdditiveCode, d: Option<usize>) -> String {
    match d {
        Some(d) => format!("[{}, {}^{}, {d}]", c.n(), c.params().p(), c.k()),
        None => format!("[{}, {}^{}]", c.n(), c.params().p(), c.k()),
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchJson {
    pub schema: u32,
    pub command: &'static str,
    pub field: FieldJson,
    pub duality: Vec<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    pub mode: &'static str,
    pub iterations: Option<u64>,
    pub seed: Option<u64>,
    pub strategy: &'static str,
    pub status: &'static str,
    pub d: Option<usize>,
    pub singleton: usize,
    pub theory: Option<TheoryJson>,
    pub enumerated: u64,
    pub witness: Option<String>,
}

/// How a search was requested, for the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeInfo {
    pub name: &'static str,
    pub iterations: Option<u64>,
    pub seed: Option<u64>,
}

impl SearchJson {
    pub fn new(m: &Duality, n: usize, k: usize, mode: ModeInfo, r: &SearchResult) -> SearchJson {
        let params = m.params();
        SearchJson {
            schema: SCHEMA,
            command: "search-d1",
            field: params.into(),
            duality: matrix_rows(m.matrix()),
            n,
            k,
            mode: mode.name,
            iterations: mode.iterations,
            seed: mode.seed,
            strategy: r.strategy.label(),
            status: r.status.label(),
            d: r.status.distance(),
            singleton: addhull_core::search::singleton_bound(n, k, params.e()),
            theory: theory_json(r.theory),
            enumerated: r.enumerated,
            witness: r.witness.as_ref().map(write_code),
        }
    }

    pub fn text(&self, seconds: f64) -> String {
        let q = format!("[{}, {}^{}", self.n, self.field.p, self.k);
        let mut out = match self.d {
            Some(d) => format!("{q}, {d}] d_1 {} ({})\n", self.status, self.strategy),
            None => format!("{q}] d_1 {} ({})\n", self.status, self.strategy),
        };
        writeln!(out, "searched {} in {seconds:.3} s, Singleton bound {}", self.enumerated, self.singleton).unwrap();
        if let Some(t) = &self.theory {
            match t.d {
                Some(d) => writeln!(out, "closed form: d_1 = {d}").unwrap(),
                None => out.push_str("closed form: no one-rank hull code\n"),
            }
        }
        if let Some(w) = &self.witness {
            out.push_str("witness:\n");
            out.push_str(w);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct KnownJson {
    pub d: Option<usize>,
    pub optimal: bool,
    pub improves_symmetric: bool,
}

impl From<KnownEntry> for KnownJson {
    fn from(k: KnownEntry) -> Self {
        KnownJson { d: k.d, optimal: k.optimal, improves_symmetric: k.improves_symmetric }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CellJson {
    pub n: usize,
    pub k: usize,
    pub status: &'static str,
    pub d: Option<usize>,
    pub strategy: &'static str,
    pub enumerated: u64,
    pub singleton: usize,
    pub theory: Option<TheoryJson>,
    pub known: Option<KnownJson>,
    pub agrees_with_theory: Option<bool>,
    pub matches_known: Option<bool>,
    pub witness: Option<String>,
}

impl From<&TableCell> for CellJson {
    fn from(c: &TableCell) -> Self {
        CellJson {
            n: c.n,
            k: c.k,
            status: c.result.status.label(),
            d: c.result.status.distance(),
            strategy: c.result.strategy.label(),
            enumerated: c.result.enumerated,
            singleton: c.singleton,
            theory: theory_json(c.result.theory),
            known: c.known.map(Into::into),
            agrees_with_theory: c.agrees_with_theory(),
            matches_known: c.matches_known(),
            witness: c.result.witness.as_ref().map(write_code),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TableJson {
    pub schema: u32,
    pub command: &'static str,
    pub field: FieldJson,
    pub duality: Vec<Vec<u32>>,
    pub n_max: usize,
    pub k_max: usize,
    pub seed: u64,
    pub iterations: u64,
    pub cells: Vec<CellJson>,
}

/// `n,k,status,d,witness`; the witness is a quoted code file.
pub fn table_csv(cells: &[TableCell]) -> String {
    let mut out = String::from("n,k,status,d,witness\n");
    for c in cells {
        let d = c.result.status.distance().map(|d| d.to_string()).unwrap_or_default();
        let w = c.result.witness.as_ref().map(|w| format!("\"{}\"", write_code(w).trim_end())).unwrap_or_default();
        writeln!(out, "{},{},{},{d},{w}", c.n, c.k, c.result.status.label()).unwrap();
    }
    out
}

fn cell_token(c: &TableCell) -> String {
    let mut s = match c.result.status {
        Status::Exact(d) => d.to_string(),
        Status::LowerBound(d) => format!(">={d}"),
        Status::NoOneRankCode => "-".into(),
        Status::Unresolved => "?".into(),
    };
    if c.matches_known() == Some(false) || c.agrees_with_theory() == Some(false) {
        s.push('!');
    }
    s
}

/// Grid with one row per `n` and one column per `k`.
pub fn table_text(cells: &[TableCell]) -> String {
    let n_max = cells.iter().map(|c| c.n).max().unwrap_or(0);
    let k_max = cells.iter().map(|c| c.k).max().unwrap_or(0);
    let mut grid = vec![vec![String::new(); k_max + 1]; n_max + 1];
    for c in cells {
        grid[c.n][c.k] = cell_token(c);
    }
    let width = grid.iter().flatten().map(String::len).max().unwrap_or(1).max(k_max.to_string().len()).max(2);
    let mut out = format!("{:>3} |", "n\\k");
    for k in 1..=k_max {
        write!(out, " {k:>width$}").unwrap();
    }
    out.push('\n');
    out.push_str(&"-".repeat(5 + k_max * (width + 1)));
    out.push('\n');
    for (n, row) in grid.iter().enumerate().skip(1) {
        write!(out, "{n:>3} |").unwrap();
        for tok in &row[1..] {
            write!(out, " {tok:>width$}").unwrap();
        }
        out.push('\n');
    }
    let mismatches: Vec<String> = cells
        .iter()
        .filter(|c| c.matches_known() == Some(false) || c.agrees_with_theory() == Some(false))
        .map(|c| format!("({}, {})", c.n, c.k))
        .collect();
    if !mismatches.is_empty() {
        writeln!(out, "! differs from reference or closed form: {}", mismatches.join(" ")).unwrap();
    }
    out
}

pub fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
