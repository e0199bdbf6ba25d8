//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Set ADDHULL_SLOW=1 to add the n = 5 table cells.

use addhull::fixtures;
use addhull::parallel;
use addhull_core::constructions::{self, Check};
use addhull_core::duality::{enumerate_dualities, PrimePowerParams};
use addhull_core::search::{Mode, SearchSpec, Status};
use addhull_core::{AdditiveCode, Duality, FpMatrix, GfElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Oracles work on raw digit vectors and the duality matrix entries only.

fn digits(mut x: u64, p: u32, e: usize) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = (x % p as u64) as u32;
            x /= p as u64;
            d
        })
        .collect()
}

fn matrix(m: &Duality) -> Vec<Vec<u32>> {
    (0..m.matrix().rows()).map(|r| m.matrix().row(r).to_vec()).collect()
}

/// `u D v^T mod p`.
fn form(d: &[Vec<u32>], p: u32, u: &[u32], v: &[u32]) -> u32 {
    let mut s = 0u64;
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            s += (*ui as u64) * (d[i][j] as u64) * (*vj as u64);
        }
    }
    (s % p as u64) as u32
}

fn all_elements(p: u32, e: usize) -> Vec<Vec<u32>> {
    (0..(p as u64).pow(e as u32)).map(|x| digits(x, p, e)).collect()
}

fn brute_self_orthogonal(m: &Duality) -> Vec<u64> {
    let (p, e) = (m.params().p(), m.params().e());
    let d = matrix(m);
    (0..(p as u64).pow(e as u32))
        .filter(|&x| {
            let v = digits(x, p, e);
            form(&d, p, &v, &v) == 0
        })
        .collect()
}

fn random_nonsingular(rng: &mut ChaCha8Rng, params: PrimePowerParams) -> Duality {
    let (p, e) = (params.p(), params.e());
    loop {
        let data: Vec<u32> = (0..e * e).map(|_| rng.random_range(0..p)).collect();
        let mat = FpMatrix::from_vec(params.field(), e, e, data).unwrap();
        if let Ok(m) = Duality::new(params, mat) {
            return m;
        }
    }
}

fn criterion_1() -> Outcome {
    let f9 = PrimePowerParams::new(3, 2).unwrap();
    let (mut total, mut sym, mut skew) = (0, 0, 0);
    for m in enumerate_dualities(f9).unwrap() {
        let c = m.classify().unwrap();
        total += 1;
        sym += c.symmetric as u32;
        skew += c.skew_symmetric as u32;
    }
    check((total, sym, skew) == (48, 18, 2), || format!("total={total} symmetric={sym} skew={skew}"))
}

fn criterion_2() -> Outcome {
    // a nu_1 + b nu_2 + c nu_3 is encoded a + 3b + 9c.
    let enc = |a: u64, b: u64, c: u64| a + 3 * b + 9 * c;
    let listed_1: BTreeSet<u64> = [
        enc(0, 0, 0),
        enc(2, 1, 0),
        enc(0, 2, 1),
        enc(2, 1, 2),
        enc(2, 0, 2),
        enc(1, 2, 0),
        enc(0, 1, 2),
        enc(1, 2, 1),
        enc(1, 0, 1),
    ]
    .into();
    let listed_2: BTreeSet<u64> = [enc(0, 0, 0), enc(0, 1, 1), enc(0, 2, 2)].into();
    for (id, listed) in [("ex4_1", listed_1), ("ex4_2", listed_2)] {
        let m = fixtures::duality(id).unwrap().unwrap();
        let brute: BTreeSet<u64> = brute_self_orthogonal(&m).into_iter().collect();
        let library: BTreeSet<u64> = m.self_orthogonal_elements().unwrap().iter().map(|x| x.encode(3)).collect();
        let closed = m.count_self_orthogonal_closed_form().unwrap();
        check(brute == listed, || format!("{id}: brute force {brute:?} vs listed {listed:?}"))?;
        check(library == listed, || format!("{id}: library {library:?} vs listed {listed:?}"))?;
        check(closed == listed.len() as u128, || format!("{id}: closed form {closed} vs {}", listed.len()))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut compare = |m: &Duality| -> Outcome {
        let brute = brute_self_orthogonal(m).len() as u128;
        let closed = m.count_self_orthogonal_closed_form().map_err(|e| e.to_string())?;
        checked += 1;
        check(brute == closed, || format!("{:?}: brute {brute} closed form {closed}", matrix(m)))
    };
    let f9 = PrimePowerParams::new(3, 2).unwrap();
    let f25 = PrimePowerParams::new(5, 2).unwrap();
    let f27 = PrimePowerParams::new(3, 3).unwrap();
    let n9 = enumerate_dualities(f9).unwrap().map(|m| compare(&m)).collect::<Result<Vec<_>, _>>()?.len();
    let n25 = enumerate_dualities(f25).unwrap().map(|m| compare(&m)).collect::<Result<Vec<_>, _>>()?.len();
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..200 {
        compare(&random_nonsingular(&mut rng, f27))?;
    }
    check((n9, n25, checked) == (48, 480, 48 + 480 + 200), || format!("F9 {n9}, F25 {n25}, total {checked}"))
}

/// `C ∩ C^M` by listing every codeword of `C` and testing it against each
/// generator row.
fn brute_hull(m: &Duality, gen: &FpMatrix, n: usize) -> BTreeSet<Vec<u32>> {
    let (p, e) = (m.params().p(), m.params().e());
    let d = matrix(m);
    let rows: Vec<&[u32]> = (0..gen.rows()).map(|r| gen.row(r)).collect();
    let words = span(&rows, p, n * e);
    words
        .into_iter()
        .filter(|w| {
            rows.iter()
                .all(|g| (0..n).map(|t| form(&d, p, &w[t * e..t * e + e], &g[t * e..t * e + e])).sum::<u32>() % p == 0)
        })
        .collect()
}

fn span(rows: &[&[u32]], p: u32, len: usize) -> BTreeSet<Vec<u32>> {
    let k = rows.len();
    let mut out = BTreeSet::new();
    for idx in 0..(p as u64).pow(k as u32) {
        let coeffs = digits(idx, p, k);
        let mut w = vec![0u32; len];
        for (c, row) in coeffs.iter().zip(rows) {
            for (x, r) in w.iter_mut().zip(row.iter()) {
                *x = (*x + c * r) % p;
            }
        }
        out.insert(w);
    }
    out
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0;
    for (p, e) in [(2u64, 2usize), (3, 2)] {
        let params = PrimePowerParams::new(p, e).unwrap();
        while pairs < if p == 2 { 250 } else { 500 } {
            let n = rng.random_range(1..=10 / e);
            let k = rng.random_range(1..=n * e);
            let data: Vec<u32> = (0..k * n * e).map(|_| rng.random_range(0..p as u32)).collect();
            let gen = FpMatrix::from_vec(params.field(), k, n * e, data).unwrap();
            let Ok(c) = AdditiveCode::from_matrix(params, n, &gen) else { continue };
            let m = random_nonsingular(&mut rng, params);
            let hull = brute_hull(&m, c.generator(), n);
            let report = c.hull(&m).unwrap();
            let size = (p as usize).pow(report.hull_rank as u32);
            check(hull.len() == size, || format!("pair {pairs}: |hull| {} vs p^{}", hull.len(), report.hull_rank))?;
            let basis: Vec<&[u32]> = (0..report.generators.rows()).map(|r| report.generators.row(r)).collect();
            check(span(&basis, p as u32, n * e) == hull, || format!("pair {pairs}: hull basis spans a different set"))?;
            pairs += 1;
        }
    }
    check(pairs == 500, || format!("{pairs} pairs"))
}

fn criterion_5() -> Outcome {
    let f9 = PrimePowerParams::new(3, 2).unwrap();
    let m1 = fixtures::duality("f9.M1").unwrap().unwrap();
    let m2 = fixtures::duality("f9.M2").unwrap().unwrap();
    let el = |x: u64| f9.decode(x).unwrap();
    let word = |xs: &[u64]| xs.iter().map(|&x| el(x)).collect::<Vec<GfElement>>();
    let so5 = fixtures::code("thm5_2.input").unwrap().unwrap().code;
    let acd4 = fixtures::code("thm5_5.input").unwrap().unwrap().code;
    let tri = fixtures::code("thm5_4.code").unwrap().unwrap().code;
    const V: u64 = 3;
    let expect = |name: &str,
                  m: &Duality,
                  c: &AdditiveCode,
                  params: (usize, usize, usize),
                  rank: usize,
                  rows: Option<Vec<Vec<u64>>>|
     -> Outcome {
        let got = (c.n(), c.k(), c.min_distance().unwrap());
        check(got == params, || format!("{name}: {got:?} vs {params:?}"))?;
        let r = c.hull_rank(m).unwrap();
        check(r == rank, || format!("{name}: hull rank {r} vs {rank}"))?;
        if let Some(rows) = rows {
            check(c.encoded_rows() == rows, || format!("{name}: rows {:?}", c.encoded_rows()))?;
        }
        Ok(())
    };
    let c = constructions::repetition_code(&m1, 2, Check::Verify).map_err(|e| e.to_string())?;
    expect("thm5.1", &m1, &c, (2, 2, 2), 0, Some(vec![vec![1, 1], vec![V, V]]))?;
    let c = constructions::acd_from_self_orthogonal(&so5, &m1, &el(1), Check::Verify).map_err(|e| e.to_string())?;
    let rows = vec![vec![1, 0, 0, 1, 1, 1, 1, V], vec![0, 1, 0, V, V, 2 * V, 2 * V, 1], vec![0, 0, 1, 2, V, 1, V, 0]];
    expect("thm5.2", &m1, &c, (8, 3, 5), 0, Some(rows.clone()))?;
    let c = constructions::one_rank_from_self_orthogonal(&so5, &m1, &el(1), &el(1 + V), Check::Verify)
        .map_err(|e| e.to_string())?;
    let mut rows3 = rows;
    rows3[2][2] = 1 + V;
    expect("thm5.3", &m1, &c, (8, 3, 5), 1, Some(rows3))?;
    let h = constructions::validate_skew_tridiagonal(&tri, &m2).map_err(|e| e.to_string())?;
    check(h.is_one_rank(), || "tridiagonal example is not one-rank".into())?;
    let l = tri.log_gram(&m2).unwrap();
    let l: Vec<Vec<u32>> = (0..3).map(|r| l.row(r).to_vec()).collect();
    check(l == [[0, 1, 0], [2, 0, 2], [0, 1, 0]], || format!("tridiagonal log-Gram {l:?}"))?;
    let c = constructions::one_rank_from_acd_add_row(&acd4, &m2, &word(&[V, V, 1, 1]), Check::Verify)
        .map_err(|e| e.to_string())?;
    expect("thm5.5", &m2, &c, (4, 3, 2), 1, Some(vec![vec![V, V, 1, 1], vec![1, 1, 0, 0], vec![V, V, V, V]]))?;
    let c = constructions::one_rank_from_acd_extend(&acd4, &m2, &word(&[V, 1, 1, 1]), &el(1), Check::Verify)
        .map_err(|e| e.to_string())?;
    expect("thm5.6", &m2, &c, (5, 3, 3), 1, Some(vec![vec![1, V, 1, 1, 1], vec![1, 1, 1, 0, 0], vec![1, V, V, V, V]]))
}

fn n1() -> Duality {
    fixtures::duality("f4.N1").unwrap().unwrap()
}

/// Largest distance of a one-rank hull code, `None` for "-".
fn exhaustive_d1(m: &Duality, n: usize, k: usize, budget: u64) -> Result<Option<usize>, String> {
    let mut spec = SearchSpec::new(m.clone(), n, k, Mode::Exhaustive);
    spec.budgets.subspaces = budget;
    let r = parallel::search(spec, &parallel::pool(0)).map_err(|e| e.to_string())?.value;
    match r.status {
        Status::Exact(d) => Ok(Some(d)),
        Status::NoOneRankCode => Ok(None),
        other => Err(format!("n={n} k={k}: unexpected status {other:?}")),
    }
}

fn compare_cells(m: &Duality, cells: &[(usize, usize, Option<usize>)], budget: u64) -> Outcome {
    let mut wrong = Vec::new();
    for &(n, k, want) in cells {
        let got = exhaustive_d1(m, n, k, budget)?;
        if got != want {
            wrong.push(format!("d1[{n},{k}] expected {want:?}, found {got:?}"));
        }
    }
    check(wrong.is_empty(), || wrong.join("; "))
}

fn criterion_6() -> Outcome {
    // Rows n = 1..4, k = 1..2n-1 of the published table; 0 stands for "-".
    let rows: [&[usize]; 4] = [&[0], &[2, 1, 1], &[2, 2, 2, 1, 1], &[4, 3, 3, 3, 2, 1, 1]];
    let mut cells = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            cells.push((i + 1, j + 1, (d > 0).then_some(d)));
        }
    }
    compare_cells(&n1(), &cells, addhull_core::DEFAULT_BUDGET)
}

fn criterion_6_slow() -> Outcome {
    let cells: Vec<_> = (1..=4).map(|k| (5, k, Some(4))).collect();
    compare_cells(&n1(), &cells, 1 << 27)
}

fn criterion_7() -> Outcome {
    let m = |rows: [[i64; 2]; 2]| Duality::from_rows(2, &rows).unwrap();
    let dualities = [
        (n1(), false),
        (fixtures::duality("f4.N2").unwrap().unwrap(), false),
        (m([[1, 0], [0, 1]]), true),
        (m([[1, 1], [1, 0]]), true),
    ];
    let positive = |d: usize| (d > 0).then_some(d);
    for (m, symmetric) in &dualities {
        let mut cells = Vec::new();
        for n in 1..=4usize {
            let k1 = if *symmetric || n % 2 == 0 { n } else { n - 1 };
            cells.push((n, 1, positive(k1)));
            cells.push((n, 2, positive(n - 1)));
            if n >= 2 {
                cells.push((n, 2 * n - 2, Some(1)));
            }
        }
        compare_cells(m, &cells, addhull_core::DEFAULT_BUDGET).map_err(|e| format!("{:?}: {e}", matrix(m)))?;
    }
    let m2 = fixtures::duality("f9.M2").unwrap().unwrap();
    let got = exhaustive_d1(&m2, 2, 2, addhull_core::DEFAULT_BUDGET)?;
    check(got.is_none(), || format!("F9 under M2, n=2 k=2: found d = {got:?}"))
}

fn criterion_8() -> Outcome {
    for (p, e) in [(3u64, 2usize), (2, 3)] {
        let params = PrimePowerParams::new(p, e).unwrap();
        let els = all_elements(p as u32, e);
        let want = (p as usize).pow(e as u32 - 1);
        for m in enumerate_dualities(params).unwrap() {
            let d = matrix(&m);
            for (ui, u) in els.iter().enumerate().skip(1) {
                let count = els.iter().filter(|v| form(&d, p as u32, u, v) == 0).count();
                check(count == want, || format!("F_{p}^{e} {d:?} u={ui}: {count} vs {want}"))?;
                let lib = m.chi_one_set(&params.decode(ui as u64).unwrap()).unwrap().len();
                check(lib == want, || format!("F_{p}^{e} {d:?} u={ui}: library {lib} vs {want}"))?;
            }
        }
    }
    let mut anisotropic = 0;
    for p in [3u64, 5] {
        let params = PrimePowerParams::new(p, 2).unwrap();
        let els = all_elements(p as u32, 2);
        for m in enumerate_dualities(params).unwrap() {
            let d = matrix(&m);
            if els.iter().skip(1).any(|v| form(&d, p as u32, v, v) == 0) {
                continue;
            }
            anisotropic += 1;
            for s in 1..p as u32 {
                let count = els.iter().filter(|v| form(&d, p as u32, v, v) == s).count();
                check(count == p as usize + 1, || format!("F_{p}^2 {d:?} s={s}: {count} vs {}", p + 1))?;
            }
        }
    }
    check(anisotropic > 0, || "no anisotropic duality found".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_addhull")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_9() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["search-d1", "--duality", "f4.N1", "-n", "4", "-k", "4"],
        &[
            "search-d1",
            "--duality",
            "f4.N1",
            "-n",
            "6",
            "-k",
            "5",
            "--mode",
            "random",
            "--iters",
            "20000",
            "--seed",
            "5",
        ],
        &[
            "search-d1",
            "--duality",
            "f9.M1",
            "-n",
            "3",
            "-k",
            "3",
            "--mode",
            "random",
            "--iters",
            "5000",
            "--seed",
            "17",
        ],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let mut full = vec!["--json", "--threads", threads];
            full.extend_from_slice(args);
            outputs.push(run_cli(&full)?);
        }
        check(outputs[0] == outputs[1], || format!("{args:?}: JSON differs between 1 and 4 threads"))?;
        check(outputs[0].starts_with(b"{"), || format!("{args:?}: not JSON"))?;
    }
    Ok(())
}

fn main() {
    let slow = std::env::var("ADDHULL_SLOW").is_ok_and(|v| v == "1");
    let criteria: [Criterion; 9] = [
        ("1", "duality census over F_9", criterion_1, Duration::from_secs(1)),
        ("2", "self-orthogonal elements of the two F_27 examples", criterion_2, Duration::from_secs(1)),
        ("3", "closed-form count vs brute force over F_9, F_25, F_27", criterion_3, Duration::from_secs(60)),
        ("4", "hull rank and basis vs brute-force intersection", criterion_4, Duration::from_secs(60)),
        ("5", "construction regressions", criterion_5, Duration::from_secs(5)),
        ("6", "F_4 table under N1, n <= 4, k <= 2n-1", criterion_6, Duration::from_secs(600)),
        ("7", "closed-form d_1 vs exhaustive search", criterion_7, Duration::from_secs(600)),
        ("8", "character and quadratic-form counting", criterion_8, Duration::from_secs(60)),
        ("9", "search-d1 JSON identical for 1 and 4 threads", criterion_9, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    let mut report = |id: &str, what: &str, f: fn() -> Outcome, limit: Duration| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            check(elapsed <= limit, || format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
        });
        match outcome {
            Ok(()) => println!("criterion {id}: PASS  {what} ({:.2} s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL  {what} ({:.2} s): {msg}", elapsed.as_secs_f64());
            }
        }
    };
    for (id, what, f, limit) in criteria {
        report(id, what, f, limit);
    }
    if slow {
        report("6 (n = 5)", "F_4 table under N1, n = 5, k <= 4", criterion_6_slow, Duration::from_secs(7200));
    } else {
        println!("criterion 6 (n = 5): SKIPPED  set ADDHULL_SLOW=1 to run");
    }
    if failed > 0 {
        println!("{failed} criterion line(s) failed");
        std::process::exit(1);
    }
}
