//! Digit-packed codewords for the distance hot loop.
//!
//! A codeword of `F_p^(en)` is stored in one `u128`, digit `j` in bits
//! `j*w .. j*w + w`. For `p = 2` the width is one bit and addition is XOR.
//! For odd `p` each field gets one spare bit (`2^(w-1) >= p`) so a lane-wise
//! sum can be reduced without carries leaking between fields.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub(crate) struct Packing {
    p: u32,
    e: usize,
    digits: usize,
    width: u32,
    /// Lowest bit of every field.
    lsb: u128,
    /// Top bit of every field.
    high: u128,
    /// `2^(w-1) - p` in every field.
    bias: u128,
    /// Lowest bit of the first field of every coordinate block.
    block_lsb: u128,
}

impl Packing {
    pub(crate) fn new(p: u32, e: usize, n: usize) -> Option<Packing> {
        let width = if p == 2 { 1 } else { 33 - (p - 1).leading_zeros() };
        let digits = e * n;
        if digits == 0 || digits as u32 * width > 128 {
            return None;
        }
        let mut lsb = 0u128;
        let mut block_lsb = 0u128;
        for j in 0..digits {
            lsb |= 1 << (j as u32 * width);
            if j % e == 0 {
                block_lsb |= 1 << (j as u32 * width);
            }
        }
        let (high, bias) =
            if p == 2 { (0, 0) } else { (lsb << (width - 1), lsb * ((1u128 << (width - 1)) - p as u128)) };
        Some(Packing { p, e, digits, width, lsb, high, bias, block_lsb })
    }

    pub(crate) fn pack(&self, digits: &[u32]) -> u128 {
        debug_assert_eq!(digits.len(), self.digits);
        digits.iter().enumerate().fold(0u128, |acc, (j, &d)| acc | (d as u128) << (j as u32 * self.width))
    }

    #[cfg(test)]
    pub(crate) fn unpack(&self, x: u128) -> Vec<u32> {
        let mask = (1u128 << self.width) - 1;
        (0..self.digits).map(|j| ((x >> (j as u32 * self.width)) & mask) as u32).collect()
    }

    #[inline]
    pub(crate) fn add(&self, a: u128, b: u128) -> u128 {
        if self.p == 2 {
            return a ^ b;
        }
        let s = a + b;
        let over = ((s + self.bias) & self.high) >> (self.width - 1);
        s - over * self.p as u128
    }

    /// `s * x` by repeated doubling.
    #[cfg(test)]
    pub(crate) fn scale(&self, x: u128, s: u32) -> u128 {
        let mut acc = 0;
        let mut base = x;
        let mut s = s % self.p;
        while s > 0 {
            if s & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            s >>= 1;
        }
        acc
    }

    /// Number of nonzero coordinate blocks.
    #[inline]
    pub(crate) fn weight(&self, x: u128) -> u32 {
        let mut y = x;
        for s in 1..self.width {
            y |= x >> s;
        }
        y &= self.lsb;
        let mut z = y;
        for s in 1..self.e as u32 {
            z |= y >> (s * self.width);
        }
        (z & self.block_lsb).count_ones()
    }
}

/// Minimum weight over all nonzero `F_p`-combinations of `rows`, walked in
/// modular Gray-code order so each step adds exactly one row. Stops as soon
/// as the running minimum drops to `floor` or below.
pub(crate) fn min_weight_packed(pk: &Packing, rows: &[u128], floor: u32) -> u32 {
    let k = rows.len();
    let p = pk.p;
    let mut counter = vec![0u32; k];
    let mut cw = 0u128;
    let mut best = u32::MAX;
    loop {
        let mut j = 0;
        while j < k && counter[j] == p - 1 {
            counter[j] = 0;
            j += 1;
        }
        if j == k {
            return best;
        }
        counter[j] += 1;
        cw = pk.add(cw, rows[j]);
        let w = pk.weight(cw);
        if w < best {
            best = w;
            if best <= floor {
                return best;
            }
        }
    }
}

/// Same walk on plain digit vectors, for codes too long to pack.
pub(crate) fn min_weight_digits(p: u32, e: usize, rows: &[Vec<u32>], floor: u32) -> u32 {
    let k = rows.len();
    let Some(len) = rows.first().map(Vec::len) else {
        return u32::MAX;
    };
    let mut counter = vec![0u32; k];
    let mut cw = vec![0u32; len];
    let mut best = u32::MAX;
    loop {
        let mut j = 0;
        while j < k && counter[j] == p - 1 {
            counter[j] = 0;
            j += 1;
        }
        if j == k {
            return best;
        }
        counter[j] += 1;
        for (c, &r) in cw.iter_mut().zip(&rows[j]) {
            *c += r;
            if *c >= p {
                *c -= p;
            }
        }
        let w = cw.chunks(e).filter(|b| b.iter().any(|&d| d != 0)).count() as u32;
        if w < best {
            best = w;
            if best <= floor {
                return best;
            }
        }
    }
}
