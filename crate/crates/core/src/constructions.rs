//! Builders for ACD, self-orthogonal and one-rank hull codes.
//!
//! Every builder checks its hypotheses. With [`Check::Verify`] it also
//! recomputes the hull (and, where a distance gain is promised, both minimum
//! distances) of the output and fails if the promised property does not hold.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::{AdditiveCode, HullReport};
use crate::duality::{Duality, GfElement};
use crate::error::{Error, Hypothesis, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Check {
    #[default]
    Verify,
    Skip,
}

fn conclusion(expected: &'static str, hull_rank: usize) -> Error {
    Error::Hypothesis(Hypothesis::Conclusion { expected, hull_rank })
}

fn expect_hull(c: &AdditiveCode, m: &Duality, want: usize, expected: &'static str) -> Result<()> {
    let r = c.hull_rank(m)?;
    if r != want {
        return Err(conclusion(expected, r));
    }
    Ok(())
}

fn expect_growth(before: &AdditiveCode, after: &AdditiveCode) -> Result<()> {
    let (d, d2) = (before.min_distance()?, after.min_distance()?);
    if d2 <= d {
        return Err(Hypothesis::DistanceNotIncreased { before: d, after: d2 }.into());
    }
    Ok(())
}

fn require_self_orthogonal(c: &AdditiveCode, m: &Duality) -> Result<()> {
    let r = c.hull_rank(m)?;
    if r != c.k() {
        return Err(Hypothesis::NotSelfOrthogonal { hull_rank: r, k: c.k() }.into());
    }
    Ok(())
}

fn require_skew_acd_even(c: &AdditiveCode, m: &Duality) -> Result<()> {
    if c.params() != m.params() {
        return Err(Error::FieldMismatch);
    }
    if !m.is_skew_symmetric()? {
        return Err(Hypothesis::NotSkewSymmetric.into());
    }
    if c.k() % 2 == 1 {
        return Err(Hypothesis::OddRank(c.k()).into());
    }
    let r = c.hull_rank(m)?;
    if r != 0 {
        return Err(Hypothesis::NotAcd { hull_rank: r }.into());
    }
    Ok(())
}

fn require_outside(c: &AdditiveCode, x: &[GfElement]) -> Result<()> {
    if x.len() != c.n() {
        return Err(Error::DimensionMismatch { expected: c.n(), found: x.len() });
    }
    let flat: Vec<u32> = x.iter().flat_map(|a| a.coords().iter().map(|&d| d as u32)).collect();
    if c.contains(&flat)? {
        return Err(Hypothesis::VectorInCode.into());
    }
    Ok(())
}

/// First nonzero element with `chi_x(x) != 1`, scanning in encoding order.
pub fn find_non_self_orthogonal(m: &Duality) -> Result<Option<GfElement>> {
    let p = m.params().p();
    for s in 1..p {
        if let Some(x) = m.find_with_self_pairing(s)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// First nonzero element with `chi_y(y) = 1`, scanning in encoding order.
pub fn find_nonzero_self_orthogonal(m: &Duality) -> Result<Option<GfElement>> {
    m.find_with_self_pairing(0)
}

/// Rows `(x_i, ..., x_i)` for each coordinate basis element `x_i`. ACD when
/// `p` does not divide `n`, self-orthogonal when it does; distance `n`.
pub fn repetition_code(m: &Duality, n: usize, check: Check) -> Result<AdditiveCode> {
    let params = m.params();
    let e = params.e();
    let rows: Vec<Vec<GfElement>> = (0..e)
        .map(|i| {
            let mut coords = vec![0i64; e];
            coords[i] = 1;
            params.element(&coords).map(|x| vec![x; n])
        })
        .collect::<Result<_>>()?;
    let c = AdditiveCode::from_rows(params, &rows)?;
    if check == Check::Verify {
        if n % params.p() as usize == 0 {
            expect_hull(&c, m, e, "self-orthogonal")?;
        } else {
            expect_hull(&c, m, 0, "ACD")?;
        }
    }
    Ok(c)
}

/// `[diag | G]` where the `k x k` left block carries `diag[i]` on its diagonal.
fn prepend_diagonal(c: &AdditiveCode, diag: &[GfElement]) -> Result<AdditiveCode> {
    let zero = c.params().zero();
    let rows: Vec<Vec<GfElement>> = c
        .rows()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out: Vec<GfElement> = (0..diag.len()).map(|j| if i == j { diag[i] } else { zero }).collect();
            out.extend(row);
            out
        })
        .collect();
    AdditiveCode::from_rows(c.params(), &rows)
}

/// `[xI | G]` for a self-orthogonal `C` and `chi_x(x) != 1`: an ACD code of
/// length `n + k` with strictly larger minimum distance.
pub fn acd_from_self_orthogonal(c: &AdditiveCode, m: &Duality, x: &GfElement, check: Check) -> Result<AdditiveCode> {
    require_self_orthogonal(c, m)?;
    if m.chi_log(x, x)? == 0 {
        return Err(Hypothesis::ElementSelfOrthogonal.into());
    }
    let out = prepend_diagonal(c, &vec![*x; c.k()])?;
    if check == Check::Verify {
        expect_hull(&out, m, 0, "ACD")?;
        expect_growth(c, &out)?;
    }
    Ok(out)
}

/// `[diag(x, ..., x, y) | G]` for a self-orthogonal `C`, `chi_x(x) != 1` and
/// nonzero `y` with `chi_y(y) = 1`: a one-rank hull code of length `n + k`
/// with strictly larger minimum distance.
pub fn one_rank_from_self_orthogonal(
    c: &AdditiveCode,
    m: &Duality,
    x: &GfElement,
    y: &GfElement,
    check: Check,
) -> Result<AdditiveCode> {
    require_self_orthogonal(c, m)?;
    if c.k() > 1 && m.chi_log(x, x)? == 0 {
        return Err(Hypothesis::ElementSelfOrthogonal.into());
    }
    if y.is_zero() {
        return Err(Hypothesis::ZeroElement.into());
    }
    if m.chi_log(y, y)? != 0 {
        return Err(Hypothesis::ElementNotSelfOrthogonal.into());
    }
    let mut diag = vec![*x; c.k()];
    diag[c.k() - 1] = *y;
    let out = prepend_diagonal(c, &diag)?;
    if check == Check::Verify {
        expect_hull(&out, m, 1, "one-rank")?;
        expect_growth(c, &out)?;
    }
    Ok(out)
}

/// Under a skew-symmetric duality, a code with an odd number of generator
/// rows whose pairings are nontrivial exactly between consecutive rows has a
/// one-rank hull. Checks the pattern and returns the hull.
pub fn validate_skew_tridiagonal(c: &AdditiveCode, m: &Duality) -> Result<HullReport> {
    if c.params() != m.params() {
        return Err(Error::FieldMismatch);
    }
    if !m.is_skew_symmetric()? {
        return Err(Hypothesis::NotSkewSymmetric.into());
    }
    let k = c.k();
    if k % 2 == 0 {
        return Err(Hypothesis::EvenRank(k).into());
    }
    let l = c.log_gram(m)?;
    for i in 0..k {
        for j in 0..k {
            let consecutive = i.abs_diff(j) == 1;
            if (l.get(i, j) != 0) != consecutive {
                return Err(Hypothesis::PatternViolated { row: i, col: j }.into());
            }
        }
    }
    let h = c.hull(m)?;
    if h.hull_rank != 1 {
        return Err(conclusion("one-rank", h.hull_rank));
    }
    Ok(h)
}

/// Rows `(x, G_1, ..., G_2s)` for an ACD `C` of even rank under a
/// skew-symmetric duality and `x` outside `C`: a one-rank hull code.
pub fn one_rank_from_acd_add_row(c: &AdditiveCode, m: &Duality, x: &[GfElement], check: Check) -> Result<AdditiveCode> {
    require_skew_acd_even(c, m)?;
    require_outside(c, x)?;
    let mut rows = vec![x.to_vec()];
    rows.extend(c.rows());
    let out = AdditiveCode::from_rows(c.params(), &rows)?;
    if check == Check::Verify {
        expect_hull(&out, m, 1, "one-rank")?;
    }
    Ok(out)
}

/// Rows `(alpha | x), (alpha | G_1), ..., (alpha | G_2s)` for an ACD `C` of
/// even rank under a skew-symmetric duality, `x` outside `C` and nonzero
/// `alpha`: a one-rank hull code of length `n + 1`.
pub fn one_rank_from_acd_extend(
    c: &AdditiveCode,
    m: &Duality,
    x: &[GfElement],
    alpha: &GfElement,
    check: Check,
) -> Result<AdditiveCode> {
    require_skew_acd_even(c, m)?;
    require_outside(c, x)?;
    if alpha.is_zero() {
        return Err(Hypothesis::ZeroElement.into());
    }
    let mut rows = vec![x.to_vec()];
    rows.extend(c.rows());
    let rows: Vec<Vec<GfElement>> = rows
        .into_iter()
        .map(|r| {
            let mut out = vec![*alpha];
            out.extend(r);
            out
        })
        .collect();
    let out = AdditiveCode::from_rows(c.params(), &rows)?;
    if check == Check::Verify {
        expect_hull(&out, m, 1, "one-rank")?;
    }
    Ok(out)
}
