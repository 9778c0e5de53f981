//! Minimal generators of the monomial ideal of exponent triples `(i,j,k)`
//! with `i + μ1·j + μ2·k >= d - μ`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircaseGen {
    pub v: (u32, u32, u32),
    /// `i + (j+1)μ1 + (k+1)μ2 - d`
    pub s: u32,
}

fn weight(mu1: u32, mu2: u32, (i, j, k): (u32, u32, u32)) -> u64 {
    i as u64 + mu1 as u64 * j as u64 + mu2 as u64 * k as u64
}

pub fn in_staircase(mu1: u32, mu2: u32, d: u32, v: (u32, u32, u32)) -> bool {
    weight(mu1, mu2, v) >= (d - mu1 - mu2) as u64
}

pub fn check_parameters(mu1: u32, mu2: u32, d: u32) -> Result<()> {
    if d < 2 || mu1 > mu2 || 2 * (mu1 + mu2) > d {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= mu1 <= mu2, mu1 + mu2 <= d/2 and d >= 2, got ({mu1}, {mu2}, {d})"
        )));
    }
    Ok(())
}

fn is_minimal(mu1: u32, mu2: u32, d: u32, (i, j, k): (u32, u32, u32)) -> bool {
    let inside = |v| in_staircase(mu1, mu2, d, v);
    inside((i, j, k))
        && (i == 0 || !inside((i - 1, j, k)))
        && (j == 0 || !inside((i, j - 1, k)))
        && (k == 0 || !inside((i, j, k - 1)))
}

/// Minimal generators sorted lexicographically by `(i, j, k)`.
pub fn staircase_min_gens(mu1: u32, mu2: u32, d: u32) -> Result<Vec<StaircaseGen>> {
    check_parameters(mu1, mu2, d)?;
    let top = d - mu1 - mu2;
    let jmax = top.div_ceil(mu1.max(1));
    let kmax = top.div_ceil(mu2.max(1));
    let mut out = Vec::new();
    for i in 0..=top {
        for j in 0..=jmax {
            for k in 0..=kmax {
                if !is_minimal(mu1, mu2, d, (i, j, k)) {
                    continue;
                }
                let s = i as i64 + (j as i64 + 1) * mu1 as i64 + (k as i64 + 1) * mu2 as i64 - d as i64;
                let s = u32::try_from(s)
                    .map_err(|_| Error::InternalInconsistency(format!("negative s for ({i},{j},{k})")))?;
                out.push(StaircaseGen { v: (i, j, k), s });
            }
        }
    }
    Ok(out)
}

/// Number of generators `Σ (s + 1)` of the family indexed by the staircase.
pub fn psi_count(gens: &[StaircaseGen]) -> usize {
    gens.iter().map(|g| g.s as usize + 1).sum()
}
