//! Command-line interface. Exit status: 0 success, 1 hypothesis or
//! validation failure, 2 usage, parse, I/O or budget error.

use crate::fixtures::{self, Kind, CATALOG};
use crate::format::{parse_code, parse_duality, parse_word, write_code, FormatError, ParsedCode};
use crate::parallel;
use crate::report::{self, CodeJson, HullJson, ModeInfo, SearchJson, TableJson, SCHEMA};
use addhull_core::constructions::{self, Check};
use addhull_core::duality::enumerate_dualities;
use addhull_core::search::{Budgets, Mode, RandomConfig, SearchSpec};
use addhull_core::{AdditiveCode, Duality, Error, GfElement, Hypothesis, PrimePowerParams, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::time::Duration;
use thiserror::Error as ThisError;

#[derive(Debug, Parser)]
#[command(name = "addhull", version, about = "Hulls, duals and one-rank hull searches for additive codes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for search; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest number of subspaces an exhaustive search may visit.
    #[arg(long, global = true, env = "ADDHULL_BUDGET_SUBSPACES", default_value_t = DEFAULT_BUDGET)]
    budget_subspaces: u64,
    /// Largest number of codewords a single code may have.
    #[arg(long, global = true, env = "ADDHULL_BUDGET_CODEWORDS", default_value_t = DEFAULT_BUDGET)]
    budget_codewords: u64,
    /// Wall-clock hint in seconds, reported but never used to cut a search short.
    #[arg(long, global = true, env = "ADDHULL_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,
}

impl Global {
    fn budgets(&self) -> Budgets {
        Budgets {
            subspaces: self.budget_subspaces,
            codewords: self.budget_codewords,
            wall_clock_hint: self.budget_seconds.filter(|s| s.is_finite() && *s >= 0.0).map(Duration::from_secs_f64),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hull rank and basis of a code.
    Hull(DualityAndCode),
    /// Dual code, in the code file format.
    Dual(DualityAndCode),
    /// Minimum distance of a code.
    Mindist {
        #[arg(long)]
        code: String,
    },
    /// Count symmetric and skew-symmetric dualities over F_{p^e}.
    ClassifyDualities {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        e: usize,
    },
    /// Count self-orthogonal elements by brute force and in closed form.
    CountSo {
        #[arg(long)]
        duality: String,
    },
    /// Build (or validate) a code with one of the hull constructions.
    Construct(ConstructArgs),
    /// Largest minimum distance of a one-rank hull [n, p^k] code.
    SearchD1 {
        #[arg(long)]
        duality: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Samples for randomized search.
        #[arg(long, default_value_t = RandomConfig::default().iterations)]
        iters: u64,
    },
    /// Table of d_1[n, k] for all n <= n-max, k <= k-max.
    Table {
        #[arg(long)]
        duality: String,
        #[arg(long)]
        n_max: usize,
        /// Defaults to e * n-max.
        #[arg(long)]
        k_max: Option<usize>,
        /// Output format; --json selects json.
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// Samples for cells that fall back to randomized search.
        #[arg(long, default_value_t = RandomConfig::default().iterations)]
        iters: u64,
    },
    /// List embedded fixtures, or print one.
    Fixtures { id: Option<String> },
}

#[derive(Debug, Args)]
struct DualityAndCode {
    /// Fixture id or path of a duality file.
    #[arg(long)]
    duality: String,
    /// Fixture id or path of a code file.
    #[arg(long)]
    code: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// Repetition code of length n, ACD or self-orthogonal.
    #[value(name = "thm5.1")]
    Repetition,
    /// [xI | G] from a self-orthogonal code: ACD.
    #[value(name = "thm5.2")]
    AcdFromSelfOrthogonal,
    /// [diag(x, .., x, y) | G] from a self-orthogonal code: one-rank hull.
    #[value(name = "thm5.3")]
    OneRankFromSelfOrthogonal,
    /// Check a tridiagonal pairing pattern under a skew-symmetric duality.
    #[value(name = "thm5.4")]
    SkewTridiagonal,
    /// Add a row x outside an even-rank ACD code: one-rank hull.
    #[value(name = "thm5.5")]
    AddRow,
    /// Add a row and a column (alpha, ..., alpha): one-rank hull.
    #[value(name = "thm5.6")]
    Extend,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long)]
    duality: String,
    /// Input code (all but thm5.1).
    #[arg(long)]
    code: Option<String>,
    /// Length (thm5.1).
    #[arg(short)]
    n: Option<usize>,
    /// Element (thm5.2, thm5.3) or vector (thm5.5, thm5.6) as encoded integers; found by scanning when omitted.
    #[arg(long)]
    x: Option<String>,
    /// Nonzero self-orthogonal element (thm5.3); found by scanning when omitted.
    #[arg(long)]
    y: Option<String>,
    /// Nonzero element prepended to every row (thm5.6); defaults to 1.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Debug, ThisError)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Format { context: String, source: FormatError },
    #[error(transparent)]
    Core(#[from] Error),
    /// The computation ran but a check failed; the report was printed.
    #[error("{0}")]
    Failed(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) | AppError::Io { .. } => 2,
            AppError::Format { source, .. } if source.is_syntax() => 2,
            AppError::Format { source: FormatError::Invalid(e), .. } | AppError::Core(e) => core_exit_code(e),
            AppError::Format { .. } => 2,
            AppError::Failed(_) => 1,
        }
    }
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

type AppResult<T> = Result<T, AppError>;

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let mut ctx = Ctx { global: &cli.global, out: String::new(), err: String::new() };
    let status = match execute(&mut ctx, cli.command) {
        Ok(()) => 0,
        Err(e) => {
            ctx.err.push_str(&format!("error: {e}\n"));
            e.exit_code()
        }
    };
    let _ = out.write_all(ctx.out.as_bytes());
    let _ = err.write_all(ctx.err.as_bytes());
    status
}

struct Ctx<'a> {
    global: &'a Global,
    out: String,
    err: String,
}

impl Ctx<'_> {
    fn emit<J: Serialize>(&mut self, json: &J, text: impl FnOnce() -> String) {
        if self.global.json {
            self.out.push_str(&serde_json::to_string_pretty(json).expect("report serializes"));
            self.out.push('\n');
        } else {
            self.out.push_str(&text());
        }
    }

    fn warn(&mut self, parsed: &ParsedCode) {
        if let Some(w) = parsed.warning() {
            self.err.push_str(&w);
            self.err.push('\n');
        }
    }

    fn pool(&self) -> rayon::ThreadPool {
        parallel::pool(self.global.threads)
    }
}

fn read_source(arg: &str) -> AppResult<String> {
    std::fs::read_to_string(arg).map_err(|source| AppError::Io { path: arg.to_string(), source })
}

fn load_duality(arg: &str) -> AppResult<Duality> {
    let format_err = |source| AppError::Format { context: arg.to_string(), source };
    if let Some(parsed) = fixtures::duality(arg) {
        return parsed.map_err(format_err);
    }
    parse_duality(&read_source(arg)?).map_err(format_err)
}

fn load_code(ctx: &mut Ctx, arg: &str) -> AppResult<AdditiveCode> {
    let format_err = |source| AppError::Format { context: arg.to_string(), source };
    let parsed = match fixtures::code(arg) {
        Some(parsed) => parsed.map_err(format_err)?,
        None => parse_code(&read_source(arg)?).map_err(format_err)?,
    };
    ctx.warn(&parsed);
    Ok(parsed.code)
}

fn same_field(m: &Duality, c: &AdditiveCode) -> AppResult<()> {
    if m.params() != c.params() {
        return Err(Error::FieldMismatch.into());
    }
    Ok(())
}

fn execute(ctx: &mut Ctx, command: Command) -> AppResult<()> {
    match command {
        Command::Hull(a) => {
            let m = load_duality(&a.duality)?;
            let c = load_code(ctx, &a.code)?;
            same_field(&m, &c)?;
            let h = c.hull(&m)?;
            let json = HullJson::new(&c, &c.log_gram(&m)?, &h);
            ctx.emit(&json, || json.text());
        }
        Command::Dual(a) => {
            let m = load_duality(&a.duality)?;
            let c = load_code(ctx, &a.code)?;
            same_field(&m, &c)?;
            let dual = c.dual(&m)?;
            ctx.emit(&CodeJson::new("dual", &dual, None), || write_code(&dual));
        }
        Command::Mindist { code } => {
            let c = load_code(ctx, &code)?;
            let d = c.min_distance_within(ctx.global.budget_codewords)?;
            ctx.emit(&CodeJson::new("mindist", &c, Some(d)), || format!("{}\n", report::parameters(&c, Some(d))));
        }
        Command::ClassifyDualities { p, e } => classify(ctx, p, e)?,
        Command::CountSo { duality } => count_so(ctx, &duality)?,
        Command::Construct(a) => construct(ctx, a)?,
        Command::SearchD1 { duality, n, k, mode, iters } => {
            let m = load_duality(&duality)?;
            let random = RandomConfig { iterations: iters, seed: ctx.global.seed };
            let (mode, info) = match mode {
                ModeArg::Exhaustive => {
                    (Mode::Exhaustive, ModeInfo { name: "exhaustive", iterations: None, seed: None })
                }
                ModeArg::Random => (
                    Mode::Randomized(random),
                    ModeInfo { name: "random", iterations: Some(iters), seed: Some(random.seed) },
                ),
                ModeArg::Auto => {
                    (Mode::Auto(random), ModeInfo { name: "auto", iterations: Some(iters), seed: Some(random.seed) })
                }
            };
            let mut spec = SearchSpec::new(m.clone(), n, k, mode);
            spec.budgets = ctx.global.budgets();
            let timed = parallel::search(spec, &ctx.pool())?;
            let json = SearchJson::new(&m, n, k, info, &timed.value);
            ctx.emit(&json, || json.text(timed.elapsed.as_secs_f64()));
        }
        Command::Table { duality, n_max, k_max, format, iters } => {
            let m = load_duality(&duality)?;
            if n_max == 0 {
                return Err(AppError::Usage("--n-max must be positive".into()));
            }
            let k_max = k_max.unwrap_or(n_max * m.params().e());
            let random = RandomConfig { iterations: iters, seed: ctx.global.seed };
            let timed = parallel::table(&m, n_max, k_max, ctx.global.budgets(), random, &ctx.pool())?;
            let cells = timed.value;
            let format = if ctx.global.json { TableFormat::Json } else { format };
            match format {
                TableFormat::Json => {
                    let json = TableJson {
                        schema: SCHEMA,
                        command: "table",
                        field: m.params().into(),
                        duality: report::matrix_rows(m.matrix()),
                        n_max,
                        k_max,
                        seed: random.seed,
                        iterations: random.iterations,
                        cells: cells.iter().map(Into::into).collect(),
                    };
                    ctx.out.push_str(&serde_json::to_string_pretty(&json).expect("report serializes"));
                    ctx.out.push('\n');
                }
                TableFormat::Csv => ctx.out.push_str(&report::table_csv(&cells)),
                TableFormat::Text => {
                    ctx.out.push_str(&report::table_text(&cells));
                    ctx.out.push_str(&format!("{} cells in {:.3} s\n", cells.len(), timed.elapsed.as_secs_f64()));
                }
            }
        }
        Command::Fixtures { id } => fixtures_cmd(ctx, id)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyJson {
    schema: u32,
    command: &'static str,
    field: report::FieldJson,
    total: u64,
    symmetric: u64,
    skew: u64,
    neither: u64,
    both: u64,
}

fn classify(ctx: &mut Ctx, p: u64, e: usize) -> AppResult<()> {
    let params = PrimePowerParams::new(p, e)?;
    let (mut total, mut symmetric, mut skew, mut neither, mut both) = (0, 0, 0, 0, 0);
    for m in enumerate_dualities(params)? {
        let class = m.classify()?;
        total += 1;
        symmetric += class.symmetric as u64;
        skew += class.skew_symmetric as u64;
        neither += class.is_neither() as u64;
        both += (class.symmetric && class.skew_symmetric) as u64;
    }
    let json = ClassifyJson {
        schema: SCHEMA,
        command: "classify-dualities",
        field: params.into(),
        total,
        symmetric,
        skew,
        neither,
        both,
    };
    ctx.emit(&json, || {
        let mut s = format!("total={total} symmetric={symmetric} skew={skew} neither={neither}");
        if both > 0 {
            s.push_str(&format!(" both={both}"));
        }
        s + "\n"
    });
    Ok(())
}

#[derive(Serialize)]
struct CountJson {
    schema: u32,
    command: &'static str,
    field: report::FieldJson,
    brute: u64,
    closed_form: Option<u128>,
    agree: Option<bool>,
    elements: Vec<u64>,
}

fn count_so(ctx: &mut Ctx, arg: &str) -> AppResult<()> {
    let m = load_duality(arg)?;
    let params = m.params();
    let elements: Vec<u64> = m.self_orthogonal_elements()?.iter().map(|x| x.encode(params.p())).collect();
    let brute = elements.len() as u64;
    let closed = match m.count_self_orthogonal_closed_form() {
        Ok(c) => Some(c),
        Err(Error::EvenCharacteristic) => None,
        Err(e) => return Err(e.into()),
    };
    let agree = closed.map(|c| c == brute as u128);
    let json = CountJson {
        schema: SCHEMA,
        command: "count-so",
        field: params.into(),
        brute,
        closed_form: closed,
        agree,
        elements,
    };
    ctx.emit(&json, || {
        let head = match closed {
            Some(c) if c == brute as u128 => format!("brute={brute} closed-form={c} agree"),
            Some(c) => format!("brute={brute} closed-form={c} disagree"),
            None => format!("brute={brute} closed-form=n/a (even characteristic)"),
        };
        format!("{head}\nelements: {}\n", report::join(&json.elements))
    });
    match agree {
        Some(false) => Err(AppError::Failed("closed form disagrees with brute force".into())),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct ConstructJson {
    schema: u32,
    command: &'static str,
    theorem: String,
    field: report::FieldJson,
    n: usize,
    k: usize,
    d: usize,
    hull_rank: usize,
    class: &'static str,
    rows: Vec<Vec<u64>>,
}

fn element_arg(params: PrimePowerParams, arg: &str, what: &str) -> AppResult<GfElement> {
    let word = parse_word(params, arg).map_err(|source| AppError::Format { context: format!("--{what}"), source })?;
    match word[..] {
        [x] => Ok(x),
        _ => Err(AppError::Usage(format!("--{what} takes one element, got {}", word.len()))),
    }
}

fn vector_arg(params: PrimePowerParams, arg: &str) -> AppResult<Vec<GfElement>> {
    parse_word(params, arg).map_err(|source| AppError::Format { context: "--x".into(), source })
}

/// First vector `a e_i` (`a` a basis element of `F_{p^e}`) outside `c`.
fn vector_outside(c: &AdditiveCode) -> AppResult<Vec<GfElement>> {
    let params = c.params();
    for i in 0..c.n() {
        for j in 0..params.e() {
            let mut word = vec![params.zero(); c.n()];
            word[i] = params.decode((params.p() as u64).pow(j as u32))?;
            let digits: Vec<u32> = word.iter().flat_map(|x| x.coords().iter().map(|&d| d as u32)).collect();
            if !c.contains(&digits)? {
                return Ok(word);
            }
        }
    }
    Err(Error::from(Hypothesis::VectorInCode).into())
}

fn construct(ctx: &mut Ctx, a: ConstructArgs) -> AppResult<()> {
    let m = load_duality(&a.duality)?;
    let params = m.params();
    let input = match (a.theorem, &a.code) {
        (Theorem::Repetition, _) => None,
        (_, Some(code)) => {
            let c = load_code(ctx, code)?;
            same_field(&m, &c)?;
            Some(c)
        }
        (_, None) => return Err(AppError::Usage("--code is required for this construction".into())),
    };
    let x_element = || -> AppResult<GfElement> {
        match &a.x {
            Some(s) => element_arg(params, s, "x"),
            None => constructions::find_non_self_orthogonal(&m)?
                .ok_or(AppError::Core(Hypothesis::ElementSelfOrthogonal.into())),
        }
    };
    let x_vector = |c: &AdditiveCode| -> AppResult<Vec<GfElement>> {
        match &a.x {
            Some(s) => vector_arg(params, s),
            None => vector_outside(c),
        }
    };
    let out = match (a.theorem, input) {
        (Theorem::Repetition, _) => {
            let n = a.n.ok_or_else(|| AppError::Usage("-n is required for thm5.1".into()))?;
            constructions::repetition_code(&m, n, Check::Verify)?
        }
        (Theorem::AcdFromSelfOrthogonal, Some(c)) => {
            constructions::acd_from_self_orthogonal(&c, &m, &x_element()?, Check::Verify)?
        }
        (Theorem::OneRankFromSelfOrthogonal, Some(c)) => {
            let y = match &a.y {
                Some(s) => element_arg(params, s, "y")?,
                None => constructions::find_nonzero_self_orthogonal(&m)?
                    .ok_or(Error::from(Hypothesis::ElementNotSelfOrthogonal))?,
            };
            constructions::one_rank_from_self_orthogonal(&c, &m, &x_element()?, &y, Check::Verify)?
        }
        (Theorem::SkewTridiagonal, Some(c)) => {
            constructions::validate_skew_tridiagonal(&c, &m)?;
            c
        }
        (Theorem::AddRow, Some(c)) => {
            let x = x_vector(&c)?;
            constructions::one_rank_from_acd_add_row(&c, &m, &x, Check::Verify)?
        }
        (Theorem::Extend, Some(c)) => {
            let x = x_vector(&c)?;
            let alpha = match &a.alpha {
                Some(s) => element_arg(params, s, "alpha")?,
                None => params.decode(1)?,
            };
            constructions::one_rank_from_acd_extend(&c, &m, &x, &alpha, Check::Verify)?
        }
        (_, None) => unreachable!("input code checked above"),
    };
    let d = out.min_distance_within(ctx.global.budget_codewords)?;
    let h = out.hull(&m)?;
    let json = ConstructJson {
        schema: SCHEMA,
        command: "construct",
        theorem: a.theorem.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        field: params.into(),
        n: out.n(),
        k: out.k(),
        d,
        hull_rank: h.hull_rank,
        class: h.class.label(),
        rows: out.encoded_rows(),
    };
    ctx.emit(&json, || {
        format!(
            "{} hull rank {}, {}\n{}",
            report::parameters(&out, Some(d)),
            h.hull_rank,
            h.class.label(),
            write_code(&out)
        )
    });
    Ok(())
}

#[derive(Serialize)]
struct FixtureJson {
    id: &'static str,
    kind: &'static str,
    about: &'static str,
    text: &'static str,
}

#[derive(Serialize)]
struct FixturesJson {
    schema: u32,
    command: &'static str,
    fixtures: Vec<FixtureJson>,
}

fn fixtures_cmd(ctx: &mut Ctx, id: Option<String>) -> AppResult<()> {
    let kind = |k: Kind| match k {
        Kind::Duality => "duality",
        Kind::Code => "code",
    };
    let selected: Vec<_> = match &id {
        Some(id) => vec![fixtures::get(id).ok_or_else(|| AppError::Usage(format!("unknown fixture {id:?}")))?],
        None => CATALOG.iter().collect(),
    };
    let json = FixturesJson {
        schema: SCHEMA,
        command: "fixtures",
        fixtures: selected
            .iter()
            .map(|f| FixtureJson { id: f.id, kind: kind(f.kind), about: f.about, text: f.text })
            .collect(),
    };
    ctx.emit(&json, || match id {
        Some(_) => selected[0].text.to_string(),
        None => {
            let width = CATALOG.iter().map(|f| f.id.len()).max().unwrap_or(0);
            selected.iter().map(|f| format!("{:<width$}  {:<7}  {}\n", f.id, kind(f.kind), f.about)).collect()
        }
    });
    Ok(())
}
