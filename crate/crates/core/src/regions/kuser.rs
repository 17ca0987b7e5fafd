//! K-user interference and cognitive channels. Closed forms exist only
//! when every (cognitive) receiver has no more antennas than its
//! transmitter; elsewhere the region is reported as unknown (`None`).

use crate::error::{DofError, Result};
use crate::polytope::SimplexRegion;

use super::{r, simplex};

fn check_lengths(tx: &[u32], rx: &[u32]) -> Result<()> {
    if tx.len() != rx.len() {
        return Err(DofError::DimensionMismatch {
            expected: tx.len(),
            actual: rx.len(),
        });
    }
    if tx.len() < 2 {
        return Err(DofError::domain("K-user channels need K >= 2"));
    }
    Ok(())
}

/// `Σ dᵢ/Nᵢ ≤ 1` when `Nᵢ ≤ Mᵢ` for every pair.
pub fn ick_region(tx: &[u32], rx: &[u32]) -> Result<Option<SimplexRegion>> {
    check_lengths(tx, rx)?;
    if tx.iter().zip(rx).any(|(&m, &n)| n > m) {
        return Ok(None);
    }
    let intercepts: Vec<_> = rx.iter().map(|&n| r(n)).collect();
    Ok(Some(simplex(SimplexRegion::from_intercepts(&intercepts))))
}

/// User 1 is primary and every other transmitter knows its message.
/// `d1/min(ΣMᵢ, N1) + Σ_{i≥2} dᵢ/Nᵢ ≤ 1` when `Mᵢ ≥ Nᵢ` for all `i ≥ 2`.
pub fn crck_region(tx: &[u32], rx: &[u32]) -> Result<Option<SimplexRegion>> {
    check_lengths(tx, rx)?;
    if tx.iter().zip(rx).skip(1).any(|(&m, &n)| m < n) {
        return Ok(None);
    }
    let total: u32 = tx.iter().sum();
    let mut intercepts = vec![r(total.min(rx[0]))];
    intercepts.extend(rx[1..].iter().map(|&n| r(n)));
    Ok(Some(simplex(SimplexRegion::from_intercepts(&intercepts))))
}
