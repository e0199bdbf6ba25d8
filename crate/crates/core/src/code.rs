//! Additive codes: `F_p`-linear subgroups of `F_{p^e}^n`.
//!
//! A code is held as its `k x en` generator matrix over `F_p`; coordinate
//! `t` of a codeword occupies columns `t*e .. t*e + e`.

use alloc::vec;
use alloc::vec::Vec;

use crate::duality::{check_budget, pow_saturating, Duality, GfElement, PrimePowerParams};
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::packed::{min_weight_digits, min_weight_packed, Packing};
use crate::DEFAULT_BUDGET;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdditiveCode {
    params: PrimePowerParams,
    n: usize,
    generator: FpMatrix,
}

/// Hull of a code under a duality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HullClass {
    Acd,
    OneRank,
    SelfDual,
    SelfOrthogonal,
    HigherRank(usize),
}

impl HullClass {
    /// Tag for a hull of rank `r` in a code of rank `k` and ambient dim `en`.
    /// A rank-one hull is reported as one-rank even when `k = 1`.
    pub fn from_ranks(r: usize, k: usize, en: usize) -> HullClass {
        match r {
            0 => HullClass::Acd,
            1 => HullClass::OneRank,
            r if r == k && 2 * k == en => HullClass::SelfDual,
            r if r == k => HullClass::SelfOrthogonal,
            r => HullClass::HigherRank(r),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            HullClass::Acd => "ACD",
            HullClass::OneRank => "one-rank",
            HullClass::SelfDual => "self-dual",
            HullClass::SelfOrthogonal => "self-orthogonal",
            HullClass::HigherRank(_) => "higher-rank",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub hull_rank: usize,
    /// Coefficient vectors (over the rows of `G`) of the hull generators.
    pub coefficients: FpMatrix,
    /// Hull generators as flattened codewords, one per row.
    pub generators: FpMatrix,
    pub class: HullClass,
    k: usize,
    en: usize,
}

impl HullReport {
    pub fn is_acd(&self) -> bool {
        self.hull_rank == 0
    }

    pub fn is_one_rank(&self) -> bool {
        self.hull_rank == 1
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.hull_rank == self.k
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.k == self.en
    }
}

impl AdditiveCode {
    /// Builds a code from generator rows given as flattened `F_p` vectors of
    /// length `en`, dropping rows that depend on earlier ones.
    pub fn from_matrix(params: PrimePowerParams, n: usize, rows: &FpMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRange("code length must be positive"));
        }
        if rows.field() != params.field() {
            return Err(Error::FieldMismatch);
        }
        let en = n * params.e();
        if rows.cols() != en {
            return Err(Error::DimensionMismatch { expected: en, found: rows.cols() });
        }
        let mut keep = Vec::new();
        let mut rank = 0;
        for i in 0..rows.rows() {
            let mut trial = keep.clone();
            trial.push(i);
            let r = rows.select_rows(&trial).rank();
            if r > rank {
                rank = r;
                keep = trial;
            }
        }
        if keep.is_empty() {
            return Err(Error::ZeroCode);
        }
        Ok(AdditiveCode { params, n, generator: rows.select_rows(&keep) })
    }

    /// Builds a code from rows of field elements.
    pub fn from_rows<R: AsRef<[GfElement]>>(params: PrimePowerParams, rows: &[R]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let e = params.e();
        let mut data = Vec::with_capacity(rows.len() * n * e);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            for x in r {
                if x.e() != e {
                    return Err(Error::DimensionMismatch { expected: e, found: x.e() });
                }
                data.extend(x.coords().iter().map(|&c| c as u32));
            }
        }
        let m = FpMatrix::from_vec(params.field(), rows.len(), n * e, data)?;
        AdditiveCode::from_matrix(params, n, &m)
    }

    /// Builds a code from rows of integer-encoded elements.
    pub fn from_encoded<R: AsRef<[u64]>>(params: PrimePowerParams, rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<GfElement>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&c| params.decode(c)).collect()).collect::<Result<_>>()?;
        AdditiveCode::from_rows(params, &rows)
    }

    #[inline]
    pub fn params(&self) -> PrimePowerParams {
        self.params
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Ambient dimension `en` over `F_p`.
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n * self.params.e()
    }

    pub fn generator(&self) -> &FpMatrix {
        &self.generator
    }

    pub fn entry(&self, row: usize, coord: usize) -> GfElement {
        let e = self.params.e();
        let mut coords = [0i64; crate::duality::MAX_EXPONENT];
        for (i, c) in coords.iter_mut().take(e).enumerate() {
            *c = self.generator.get(row, coord * e + i) as i64;
        }
        self.params.element(&coords[..e]).expect("e coordinates")
    }

    /// Generator rows as field elements.
    pub fn rows(&self) -> Vec<Vec<GfElement>> {
        (0..self.k()).map(|i| (0..self.n).map(|t| self.entry(i, t)).collect()).collect()
    }

    pub fn encoded_rows(&self) -> Vec<Vec<u64>> {
        let p = self.params.p();
        (0..self.k()).map(|i| (0..self.n).map(|t| self.entry(i, t).encode(p)).collect()).collect()
    }

    fn check_duality(&self, m: &Duality) -> Result<()> {
        if m.params() != self.params {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `sum_t chi_log(a_t, b_t)` for flattened words `a`, `b`.
    pub fn pairing(&self, m: &Duality, a: &[u32], b: &[u32]) -> Result<u32> {
        self.check_duality(m)?;
        let en = self.ambient_dim();
        if a.len() != en || b.len() != en {
            return Err(Error::DimensionMismatch { expected: en, found: a.len().min(b.len()) });
        }
        Ok(pair_words(m, a, b))
    }

    /// The `k x k` matrix of pairing exponents between generator rows.
    pub fn log_gram(&self, m: &Duality) -> Result<FpMatrix> {
        self.check_duality(m)?;
        let k = self.k();
        let mut l = FpMatrix::zeros(self.params.field(), k, k);
        for i in 0..k {
            for j in 0..k {
                l.set(i, j, pair_words(m, self.generator.row(i), self.generator.row(j)));
            }
        }
        Ok(l)
    }

    pub fn hull_rank(&self, m: &Duality) -> Result<usize> {
        Ok(self.k() - self.log_gram(m)?.rank())
    }

    /// Hull generators from the left kernel of the log-Gram matrix: `c = sum
    /// n_i G_i` lies in the dual iff `sum_i n_i L_ij = 0` for every `j`.
    pub fn hull(&self, m: &Duality) -> Result<HullReport> {
        let l = self.log_gram(m)?;
        let coefficients = l.transpose().nullspace();
        let generators = coefficients.mul(&self.generator)?;
        let hull_rank = coefficients.rows();
        Ok(HullReport {
            hull_rank,
            class: HullClass::from_ranks(hull_rank, self.k(), self.ambient_dim()),
            coefficients,
            generators,
            k: self.k(),
            en: self.ambient_dim(),
        })
    }

    /// `C^M = {u : sum_t u_t D (g_t)^T = 0 for every generator g}`.
    pub fn dual(&self, m: &Duality) -> Result<AdditiveCode> {
        self.check_duality(m)?;
        if self.k() == self.ambient_dim() {
            return Err(Error::DualIsZero);
        }
        // Row j of `h` is G_j with D^T applied blockwise, so u . h_j is the
        // pairing of u against G_j.
        let e = self.params.e();
        let dt = m.matrix().transpose();
        let mut h = FpMatrix::zeros(self.params.field(), self.k(), self.ambient_dim());
        for j in 0..self.k() {
            let row = self.generator.row(j);
            for t in 0..self.n {
                let block = &row[t * e..(t + 1) * e];
                for c in 0..e {
                    let v: u64 = (0..e).map(|i| block[i] as u64 * dt.get(i, c) as u64).sum();
                    h.set(j, t * e + c, (v % self.params.p() as u64) as u32);
                }
            }
        }
        let basis = h.nullspace();
        debug_assert_eq!(basis.rows(), self.ambient_dim() - self.k());
        AdditiveCode::from_matrix(self.params, self.n, &basis)
    }

    /// Whether the flattened word lies in the code (rank does not grow).
    pub fn contains(&self, word: &[u32]) -> Result<bool> {
        let en = self.ambient_dim();
        if word.len() != en {
            return Err(Error::DimensionMismatch { expected: en, found: word.len() });
        }
        let w = FpMatrix::from_vec(self.params.field(), 1, en, word.to_vec())?;
        Ok(self.generator.stack(&w)?.rank() == self.k())
    }

    /// Same code, i.e. same row space.
    pub fn same_code(&self, other: &AdditiveCode) -> bool {
        self.params == other.params
            && self.n == other.n
            && self.k() == other.k()
            && self.generator.rref().matrix == other.generator.rref().matrix
    }

    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_within(DEFAULT_BUDGET)
    }

    /// Minimum weight over the `p^k - 1` nonzero codewords.
    pub fn min_distance_within(&self, limit: u64) -> Result<usize> {
        let p = self.params.p();
        check_budget("codewords", pow_saturating(p as u128, self.k() as u32), limit)?;
        Ok(min_weight(p, self.params.e(), self.n, &self.generator, 0) as usize)
    }

    /// All `p^k` codewords (flattened), for brute-force checks.
    pub fn codewords_within(&self, limit: u64) -> Result<Vec<Vec<u32>>> {
        let f = self.params.field();
        let p = f.p() as u64;
        let total = check_budget("codewords", pow_saturating(p as u128, self.k() as u32), limit)?;
        let en = self.ambient_dim();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut c = idx;
            let mut w = vec![0u32; en];
            for i in 0..self.k() {
                let coef = (c % p) as u32;
                c /= p;
                if coef != 0 {
                    for (x, &g) in w.iter_mut().zip(self.generator.row(i)) {
                        *x = f.add(*x, f.mul(coef, g));
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// `C x D`: block-diagonal generator matrix.
    pub fn direct_sum(&self, other: &AdditiveCode) -> Result<AdditiveCode> {
        if self.params != other.params {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (self.ambient_dim(), other.ambient_dim());
        let mut g = FpMatrix::zeros(self.params.field(), self.k() + other.k(), a + b);
        for i in 0..self.k() {
            for c in 0..a {
                g.set(i, c, self.generator.get(i, c));
            }
        }
        for i in 0..other.k() {
            for c in 0..b {
                g.set(self.k() + i, a + c, other.generator.get(i, c));
            }
        }
        AdditiveCode::from_matrix(self.params, self.n + other.n, &g)
    }
}

impl core::fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "AdditiveCode[{}, {}^{}] {:?}", self.n, self.params.p(), self.k(), self.encoded_rows())
    }
}

pub(crate) fn pair_words(m: &Duality, a: &[u32], b: &[u32]) -> u32 {
    let e = m.params().e();
    let f = m.params().field();
    a.chunks(e).zip(b.chunks(e)).fold(0, |acc, (x, y)| f.add(acc, m.chi_log_unchecked(x, y)))
}

/// Minimum weight of the row space of `rows` (flattened, `n` blocks of `e`),
/// stopping early once it is known to be `<= floor`.
pub(crate) fn min_weight(p: u32, e: usize, n: usize, rows: &FpMatrix, floor: u32) -> u32 {
    match Packing::new(p, e, n) {
        Some(pk) => {
            let packed: Vec<u128> = (0..rows.rows()).map(|i| pk.pack(rows.row(i))).collect();
            min_weight_packed(&pk, &packed, floor)
        }
        None => {
            let digits: Vec<Vec<u32>> = (0..rows.rows()).map(|i| rows.row(i).to_vec()).collect();
            min_weight_digits(p, e, &digits, floor)
        }
    }
}
