//! Known exact values of `d_1[n, k]`, the largest minimum distance of a
//! one-rank hull `[n, p^k]` code under a fixed duality.

use crate::duality::Duality;
use crate::error::Result;

/// `n - ceil(k / e) + 1`.
pub fn singleton_bound(n: usize, k: usize, e: usize) -> usize {
    (n + 1).saturating_sub(k.div_ceil(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Exact(usize),
    NoOneRankCode,
}

impl Theory {
    /// The distance, or `None` when no one-rank hull code exists.
    pub fn distance(self) -> Option<usize> {
        match self {
            Theory::Exact(d) => Some(d),
            Theory::NoOneRankCode => None,
        }
    }
}

/// `d_1[n, k]` when a closed-form result covers `(n, k, p, e, M)`.
pub fn d1_theoretical(m: &Duality, n: usize, k: usize) -> Result<Option<Theory>> {
    let params = m.params();
    let (p, e) = (params.p(), params.e());
    if n == 0 || k == 0 || k > n * e {
        return Ok(None);
    }
    use Theory::{Exact, NoOneRankCode};
    // The whole space is its own ACD code.
    if k == n * e {
        return Ok(Some(NoOneRankCode));
    }
    let skew = m.is_skew_symmetric()?;
    // Under a skew-symmetric duality the log-Gram matrix is alternating, so
    // its rank is even and the hull rank has the parity of k.
    if skew && k % 2 == 0 {
        return Ok(Some(NoOneRankCode));
    }
    let symmetric = m.is_symmetric();
    let f4 = p == 2 && e == 2;
    if k == 1 {
        return Ok(if e >= 3 {
            Some(Exact(n))
        } else if e == 2 && p != 2 {
            if n >= 2 {
                Some(Exact(n))
            } else if m.has_nonzero_self_orthogonal()? {
                Some(Exact(1))
            } else {
                Some(NoOneRankCode)
            }
        } else if f4 {
            if symmetric || n % 2 == 0 {
                Some(Exact(n))
            } else if n == 1 {
                Some(NoOneRankCode)
            } else {
                Some(Exact(n - 1))
            }
        } else {
            None
        });
    }
    // Needs e >= 2: only then does the Singleton bound drop to 1.
    if e >= 2 && k == n * e - 1 && n >= 2 {
        return Ok(Some(Exact(1)));
    }
    if k == 2 {
        if e >= 3 && (p == 2 || n >= 2) {
            return Ok(Some(Exact(n)));
        }
        if e == 2 && p != 2 {
            if m.has_nonzero_self_orthogonal()? || p != 3 || n >= 3 {
                return Ok(Some(Exact(n)));
            }
            // F_9 without self-orthogonal elements at n = 2 is open.
            return Ok(None);
        }
        if f4 && !skew {
            return Ok(Some(Exact(n - 1)));
        }
    }
    if e == 2 && n >= 2 && k == 2 * n - 2 {
        if p != 2 && p != 3 {
            return Ok(Some(Exact(2)));
        }
        if f4 && !skew {
            return Ok(Some(Exact(1)));
        }
    }
    Ok(None)
}
