//! Exact linear algebra over a prime field `F_p` with `p < 2^16`.
//!
//! Scalars are plain `u32` residues in `[0, p)`; the modulus lives in the
//! [`PrimeField`] carried by each matrix. Products of two residues fit in a
//! `u64` with room to spare, so every operation reduces eagerly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A prime modulus `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 16).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Quadratic character by Euler's criterion: `0`, `+1` or `-1`.
    pub fn legendre(self, a: u32) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        let a = a % self.p;
        if a == 0 {
            return Ok(0);
        }
        Ok(if self.pow(a, (self.p as u64 - 1) / 2) == 1 { 1 } else { -1 })
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from row slices, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(FpMatrix { field, rows: rows.len(), cols, data })
    }

    /// Wraps already-reduced row-major data.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        let data = data.into_iter().map(|x| x % field.p).collect();
        Ok(FpMatrix { field, rows, cols, data })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let p = self.field.p as u64;
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u64;
                for t in 0..self.cols {
                    acc += self.get(i, t) as u64 * rhs.get(t, j) as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                out.data[i * rhs.cols + j] = (acc % p) as u32;
            }
        }
        Ok(out)
    }

    /// `self * v^T` for a row vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.field.p as u64;
        Ok((0..self.rows)
            .map(|i| {
                let acc: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (acc % p) as u32
            })
            .collect())
    }

    /// Matrix with `other`'s rows appended below `self`'s.
    pub fn stack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Submatrix made of the listed rows.
    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form. The pivot of each step is the first nonzero
    /// entry (in row order) of the leftmost column that still has one.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(src) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, src);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : M v^T = 0}`, one basis vector per row. The basis vector
    /// for free column `f` has a 1 at `f` and zeros at every other free column.
    pub fn nullspace(&self) -> FpMatrix {
        let f = self.field;
        let Rref { matrix: r, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            out.data[bi * self.cols + fc] = 1;
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                out.data[bi * self.cols + pc] = f.neg(r.get(pi, fc));
            }
        }
        out
    }

    /// Congruent diagonalization of a symmetric matrix (odd `p` only).
    ///
    /// Returns `(C, diag)` with `C` invertible and `C^T S C = diag(diag)`.
    pub fn diagonalize_symmetric(&self) -> Result<(FpMatrix, Vec<u32>)> {
        let f = self.field;
        if f.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut c = Self::identity(f, n);

        let mut done = vec![false; n];
        loop {
            let pivot = match (0..n).find(|&r| !done[r] && a.get(r, r) != 0) {
                Some(r) => r,
                None => {
                    // Every remaining diagonal entry is zero: add a row/column
                    // with a nonzero off-diagonal partner onto it. The new
                    // diagonal entry is 2 * a[r][s], nonzero since p is odd.
                    let Some((r, s)) = (0..n)
                        .filter(|&r| !done[r])
                        .flat_map(|r| (0..n).map(move |s| (r, s)))
                        .find(|&(r, s)| r != s && !done[s] && a.get(r, s) != 0)
                    else {
                        break;
                    };
                    add_congruent(&mut a, &mut c, r, s, 1);
                    r
                }
            };
            done[pivot] = true;
            let inv = f.inv(a.get(pivot, pivot));
            for j in (0..n).filter(|&j| !done[j]) {
                let factor = f.mul(a.get(j, pivot), inv);
                if factor != 0 {
                    add_congruent(&mut a, &mut c, j, pivot, f.neg(factor));
                }
            }
        }
        let diag = (0..n).map(|i| a.get(i, i)).collect();
        debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || a.get(i, j) == 0)));
        Ok((c, diag))
    }
}

/// `row_dst += factor * row_src` and the matching column operation on `a`,
/// tracked in `c` so that `c^T S c = a` keeps holding.
fn add_congruent(a: &mut FpMatrix, c: &mut FpMatrix, dst: usize, src: usize, factor: u32) {
    let f = a.field;
    let n = a.rows;
    for j in 0..n {
        let v = f.add(a.get(dst, j), f.mul(factor, a.get(src, j)));
        a.data[dst * n + j] = v;
    }
    for i in 0..n {
        let v = f.add(a.get(i, dst), f.mul(factor, a.get(i, src)));
        a.data[i * n + dst] = v;
    }
    for i in 0..c.rows {
        let v = f.add(c.get(i, dst), f.mul(factor, c.get(i, src)));
        c.data[i * c.cols + dst] = v;
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{})[", self.field.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}
