//! Dualities on the additive group of `F_{p^e}`.
//!
//! The group is `F_p^e` in the basis `x_1..x_e`; element coordinate `i - 1`
//! is the coefficient of `x_i`. A duality is a nonsingular matrix `D` with
//! `chi_u(v) = xi^(u D v^T)`, `u` indexing the character.
//!
//! As an integer, an element is encoded little-endian in base `p`: digit `j`
//! is the coefficient of `x_{j+1}`. Over `F_4` this gives `0, 1, 2, 3` for
//! `0, 1, w, 1 + w`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, PrimeField};
use crate::DEFAULT_BUDGET;

pub const MAX_EXPONENT: usize = 16;

/// `(p, e)` for the additive group of `F_{p^e}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerParams {
    field: PrimeField,
    e: usize,
}

impl PrimePowerParams {
    pub fn new(p: u64, e: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if e == 0 || e > MAX_EXPONENT {
            return Err(Error::InvalidExponent(e));
        }
        Ok(PrimePowerParams { field, e })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn e(&self) -> usize {
        self.e
    }

    /// `p^e`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        pow_saturating(self.p() as u128, self.e as u32)
    }

    pub fn zero(&self) -> GfElement {
        GfElement { coords: [0; MAX_EXPONENT], len: self.e as u8 }
    }

    /// Element from coordinates; each is reduced mod `p`.
    pub fn element(&self, coords: &[i64]) -> Result<GfElement> {
        if coords.len() != self.e {
            return Err(Error::DimensionMismatch { expected: self.e, found: coords.len() });
        }
        let mut el = self.zero();
        for (slot, &c) in el.coords.iter_mut().zip(coords) {
            *slot = self.field.reduce(c) as u16;
        }
        Ok(el)
    }

    /// Decodes the little-endian base-`p` integer encoding.
    pub fn decode(&self, mut code: u64) -> Result<GfElement> {
        if (code as u128) >= self.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order().min(u64::MAX as u128) as usize,
                found: code as usize,
            });
        }
        let p = self.p() as u64;
        let mut el = self.zero();
        for slot in el.coords.iter_mut().take(self.e) {
            *slot = (code % p) as u16;
            code /= p;
        }
        Ok(el)
    }

    /// Every element in increasing integer-encoding order.
    pub fn elements(&self, limit: u64) -> Result<impl Iterator<Item = GfElement> + '_> {
        let total = check_budget("field elements", self.order(), limit)?;
        Ok((0..total).map(move |c| self.decode(c).expect("index below p^e")))
    }

    /// Elements in lexicographic coordinate order (first coordinate most
    /// significant).
    pub(crate) fn elements_lex(&self, limit: u64) -> Result<impl Iterator<Item = GfElement> + '_> {
        let total = check_budget("field elements", self.order(), limit)?;
        let p = self.p() as u64;
        let e = self.e;
        Ok((0..total).map(move |mut c| {
            let mut el = self.zero();
            for i in (0..e).rev() {
                el.coords[i] = (c % p) as u16;
                c /= p;
            }
            el
        }))
    }
}

pub(crate) fn pow_saturating(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

pub(crate) fn check_budget(what: &'static str, required: u128, limit: u64) -> Result<u64> {
    if required > limit as u128 {
        Err(Error::BudgetExceeded { what, required, limit })
    } else {
        Ok(required as u64)
    }
}

/// An element of `F_{p^e}` as its coordinate vector over `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElement {
    coords: [u16; MAX_EXPONENT],
    len: u8,
}

impl GfElement {
    #[inline]
    pub fn coords(&self) -> &[u16] {
        &self.coords[..self.len as usize]
    }

    #[inline]
    pub fn e(&self) -> usize {
        self.len as usize
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    pub fn encode(&self, p: u32) -> u64 {
        self.coords().iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
    }

    pub fn add(&self, other: &GfElement, f: PrimeField) -> GfElement {
        let mut out = *self;
        for (a, &b) in out.coords.iter_mut().zip(other.coords()) {
            *a = f.add(*a as u32, b as u32) as u16;
        }
        out
    }

    pub fn scale(&self, s: u32, f: PrimeField) -> GfElement {
        let mut out = *self;
        for a in out.coords.iter_mut().take(self.len as usize) {
            *a = f.mul(*a as u32, s) as u16;
        }
        out
    }

    pub fn neg(&self, f: PrimeField) -> GfElement {
        self.scale(f.p() - 1, f)
    }
}

impl fmt::Debug for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

/// Which of the two defining conditions a duality satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualityClass {
    pub symmetric: bool,
    pub skew_symmetric: bool,
}

impl DualityClass {
    pub fn is_neither(&self) -> bool {
        !self.symmetric && !self.skew_symmetric
    }

    pub fn label(&self) -> &'static str {
        match (self.symmetric, self.skew_symmetric) {
            (true, true) => "symmetric+skew-symmetric",
            (true, false) => "symmetric",
            (false, true) => "skew-symmetric",
            (false, false) => "neither",
        }
    }
}

/// A nonsingular `e x e` duality matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Duality {
    params: PrimePowerParams,
    matrix: FpMatrix,
}

impl Duality {
    pub fn new(params: PrimePowerParams, matrix: FpMatrix) -> Result<Self> {
        if matrix.field() != params.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.rows() != params.e() || matrix.cols() != params.e() {
            return Err(Error::DimensionMismatch { expected: params.e(), found: matrix.rows() });
        }
        let rank = matrix.rank();
        if rank != params.e() {
            return Err(Error::SingularDuality { rank, size: params.e() });
        }
        Ok(Duality { params, matrix })
    }

    pub fn from_rows<R: AsRef<[i64]>>(p: u64, rows: &[R]) -> Result<Self> {
        let params = PrimePowerParams::new(p, rows.len())?;
        let matrix = FpMatrix::from_rows(params.field(), rows)?;
        Duality::new(params, matrix)
    }

    #[inline]
    pub fn params(&self) -> PrimePowerParams {
        self.params
    }

    #[inline]
    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    fn check(&self, x: &GfElement) -> Result<()> {
        if x.e() != self.params.e() {
            return Err(Error::DimensionMismatch { expected: self.params.e(), found: x.e() });
        }
        Ok(())
    }

    /// Exponent `t` with `chi_u(v) = xi^t`, i.e. `u D v^T mod p`.
    pub fn chi_log(&self, u: &GfElement, v: &GfElement) -> Result<u32> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.chi_log_unchecked(u.coords(), v.coords()))
    }

    #[inline]
    pub(crate) fn chi_log_unchecked<A, B>(&self, u: &[A], v: &[B]) -> u32
    where
        A: Copy + Into<u64>,
        B: Copy + Into<u64>,
    {
        let e = self.params.e();
        let p = self.params.p() as u64;
        let d = self.matrix.as_slice();
        let mut acc = 0u64;
        for i in 0..e {
            let ui: u64 = u[i].into();
            if ui == 0 {
                continue;
            }
            let mut row = 0u64;
            for j in 0..e {
                row += d[i * e + j] as u64 * v[j].into();
            }
            acc = (acc + ui * (row % p)) % p;
        }
        acc as u32
    }

    /// `Q(a) = a D a^T`.
    pub fn quadratic_form(&self, a: &GfElement) -> Result<u32> {
        self.chi_log(a, a)
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    /// Pointwise test of `chi_x(x) = 1` over all `p^e` elements.
    pub fn is_skew_symmetric(&self) -> Result<bool> {
        Ok(self.params.elements(DEFAULT_BUDGET)?.all(|x| self.chi_log_unchecked(x.coords(), x.coords()) == 0))
    }

    pub fn classify(&self) -> Result<DualityClass> {
        Ok(DualityClass { symmetric: self.is_symmetric(), skew_symmetric: self.is_skew_symmetric()? })
    }

    pub fn transpose(&self) -> Duality {
        Duality { params: self.params, matrix: self.matrix.transpose() }
    }

    /// Zeros of the quadratic form, in lexicographic coordinate order.
    pub fn self_orthogonal_elements(&self) -> Result<Vec<GfElement>> {
        self.self_orthogonal_elements_within(DEFAULT_BUDGET)
    }

    pub fn self_orthogonal_elements_within(&self, limit: u64) -> Result<Vec<GfElement>> {
        Ok(self.params.elements_lex(limit)?.filter(|x| self.chi_log_unchecked(x.coords(), x.coords()) == 0).collect())
    }

    pub fn has_nonzero_self_orthogonal(&self) -> Result<bool> {
        Ok(self
            .params
            .elements(DEFAULT_BUDGET)?
            .any(|x| !x.is_zero() && self.chi_log_unchecked(x.coords(), x.coords()) == 0))
    }

    /// Symmetrization `D' = (D + D^T) / 2` (odd `p`).
    pub fn symmetrized(&self) -> Result<FpMatrix> {
        let f = self.params.field();
        if f.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let half = f.inv(2);
        let e = self.params.e();
        let mut out = FpMatrix::zeros(f, e, e);
        for i in 0..e {
            for j in 0..e {
                out.set(i, j, f.mul(f.add(self.matrix.get(i, j), self.matrix.get(j, i)), half));
            }
        }
        Ok(out)
    }

    /// Number of self-orthogonal elements from the rank and discriminant of
    /// `D'`; odd characteristic only.
    pub fn count_self_orthogonal_closed_form(&self) -> Result<u128> {
        let f = self.params.field();
        let sym = self.symmetrized()?;
        let p = f.p() as i128;
        let e = self.params.e() as u32;
        let k = sym.rank() as u32;
        if k == 0 {
            return Ok(p.pow(e) as u128);
        }
        if k % 2 == 1 {
            return Ok(p.pow(e - 1) as u128);
        }
        let (_, diag) = sym.diagonalize_symmetric()?;
        let delta = diag.iter().filter(|&&x| x != 0).fold(1u32, |a, &b| f.mul(a, b));
        let sign = if (k / 2) % 2 == 1 { f.neg(delta) } else { delta };
        let eta = f.legendre(sign)? as i128;
        let inner = p.pow(k - 1) + (p - 1) * p.pow((k - 2) / 2) * eta;
        Ok((p.pow(e - k) * inner) as u128)
    }

    /// All `v` with `chi_u(v) = 1`, in integer-encoding order.
    pub fn chi_one_set(&self, u: &GfElement) -> Result<Vec<GfElement>> {
        self.check(u)?;
        Ok(self
            .params
            .elements(DEFAULT_BUDGET)?
            .filter(|v| self.chi_log_unchecked(u.coords(), v.coords()) == 0)
            .collect())
    }

    /// Some nonzero `v` with `chi_v(v) = xi^s`, scanning in encoding order.
    pub fn find_with_self_pairing(&self, s: u32) -> Result<Option<GfElement>> {
        let s = s % self.params.p();
        Ok(self
            .params
            .elements(DEFAULT_BUDGET)?
            .find(|x| !x.is_zero() && self.chi_log_unchecked(x.coords(), x.coords()) == s))
    }
}

impl fmt::Debug for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Duality(e={}, {:?})", self.params.e(), self.matrix)
    }
}

/// Every nonsingular `e x e` matrix over `F_p`, in lexicographic order of the
/// row-major entry vector. Restartable from any index of the full `p^(e^2)`
/// matrix space, so disjoint index ranges can be consumed independently.
#[derive(Debug, Clone)]
pub struct DualityIter {
    params: PrimePowerParams,
    next: u64,
    end: u64,
}

/// Number of matrices (singular or not) scanned by a full enumeration.
pub fn duality_space_size(params: PrimePowerParams) -> u128 {
    pow_saturating(params.p() as u128, (params.e() * params.e()) as u32)
}

pub fn enumerate_dualities(params: PrimePowerParams) -> Result<DualityIter> {
    enumerate_dualities_within(params, DEFAULT_BUDGET)
}

pub fn enumerate_dualities_within(params: PrimePowerParams, limit: u64) -> Result<DualityIter> {
    let end = check_budget("duality matrices", duality_space_size(params), limit)?;
    Ok(DualityIter { params, next: 0, end })
}

impl DualityIter {
    /// Restricts the scan to matrix indices `start..end`.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.end);
        self.next = start.min(self.end);
        self
    }

    fn matrix_at(&self, mut index: u64) -> FpMatrix {
        let e = self.params.e();
        let p = self.params.p() as u64;
        let mut data = alloc::vec![0u32; e * e];
        for slot in data.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        FpMatrix::from_vec(self.params.field(), e, e, data).expect("square")
    }
}

impl Iterator for DualityIter {
    type Item = Duality;

    fn next(&mut self) -> Option<Duality> {
        while self.next < self.end {
            let m = self.matrix_at(self.next);
            self.next += 1;
            if m.rank() == self.params.e() {
                return Some(Duality { params: self.params, matrix: m });
            }
        }
        None
    }
}
