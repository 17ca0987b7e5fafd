//! Finite-SNR rates of time-shared zero-forcing schemes and pre-log fits.
//!
//! Noise is unit-variance, so the linear SNR equals the transmit power `P`.
//! Every grid point reuses the same channel draws (common random numbers):
//! curves are then exactly monotone in SNR and the fitted slope is not
//! perturbed by independent sampling noise at each point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::achievability::{rank_of, sorted_singular_values, NetworkDraw, TimeSharingCertificate};
use crate::error::{DofError, Result};
use crate::regions::AntennaConfig;
use crate::rng::{gaussian_matrix, mix, trial_rng};

pub const MIN_POINTS: usize = 3;
pub const MIN_SPAN_DB: f64 = 20.0;

#[derive(Clone, Debug, PartialEq)]
pub struct SnrGrid {
    points_db: Vec<f64>,
    trials_per_point: u64,
}

impl SnrGrid {
    pub fn new(points_db: Vec<f64>, trials_per_point: u64) -> Result<Self> {
        if points_db.len() < MIN_POINTS {
            return Err(DofError::domain(format!(
                "an SNR grid needs at least {MIN_POINTS} points"
            )));
        }
        if points_db.iter().any(|x| !x.is_finite()) || points_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(DofError::domain(
                "SNR points must be finite and strictly increasing",
            ));
        }
        let span = points_db[points_db.len() - 1] - points_db[0];
        if span < MIN_SPAN_DB {
            return Err(DofError::domain(format!(
                "SNR grid spans {span} dB, need at least {MIN_SPAN_DB} dB"
            )));
        }
        if trials_per_point == 0 {
            return Err(DofError::domain("at least one trial per point is required"));
        }
        Ok(SnrGrid {
            points_db,
            trials_per_point,
        })
    }

    /// `lo:step:hi` in dB, both ends included.
    pub fn parse(range: &str, trials_per_point: u64) -> Result<Self> {
        let parts: Vec<f64> = range
            .split(':')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| DofError::Parse(format!("SNR range {range:?}: {e}")))?;
        let &[lo, step, hi] = parts.as_slice() else {
            return Err(DofError::Parse(format!(
                "SNR range {range:?}: expected lo:step:hi"
            )));
        };
        if step.is_nan() || step <= 0.0 || hi < lo {
            return Err(DofError::domain(format!(
                "SNR range {range:?}: need step > 0 and hi >= lo"
            )));
        }
        let steps = ((hi - lo) / step).round();
        if (lo + steps * step - hi).abs() > 1e-9 * step.max(1.0) {
            return Err(DofError::domain(format!(
                "SNR range {range:?}: step does not divide hi - lo"
            )));
        }
        let points = (0..=steps as usize).map(|k| lo + k as f64 * step).collect();
        SnrGrid::new(points, trials_per_point)
    }

    pub fn points_db(&self) -> &[f64] {
        &self.points_db
    }

    pub fn trials_per_point(&self) -> u64 {
        self.trials_per_point
    }

    pub fn powers(&self) -> Vec<f64> {
        self.points_db
            .iter()
            .map(|db| 10f64.powf(db / 10.0))
            .collect()
    }

    /// Regression abscissae, `log₂ P`.
    pub fn log2_powers(&self) -> Vec<f64> {
        self.points_db
            .iter()
            .map(|db| db / 10.0 * std::f64::consts::LOG2_10)
            .collect()
    }
}

impl Default for SnrGrid {
    fn default() -> Self {
        SnrGrid::parse("30:5:60", 50).expect("valid default grid")
    }
}

/// `Σ log₂(1 + c·λ)` over the eigenvalues of a Hermitian PSD Gram matrix.
fn log2_det_from_eigs(eigs: &[f64], c: f64) -> f64 {
    eigs.iter().map(|&l| (1.0 + c * l.max(0.0)).log2()).sum()
}

fn gram_eigs(m: &DMatrix<Complex64>) -> Vec<f64> {
    let g = m.adjoint() * m;
    g.symmetric_eigenvalues().iter().copied().collect()
}

/// Ergodic `log₂ det(I + (P/M) H H*)` of an `N × M` Gaussian channel.
pub fn p2p_rate(m: u32, n: u32, grid: &SnrGrid, seed: u64) -> Result<Vec<f64>> {
    if m == 0 || n == 0 {
        return Err(DofError::domain("antenna counts must be at least 1"));
    }
    let powers = grid.powers();
    let mut acc = vec![0.0; powers.len()];
    for t in 0..grid.trials_per_point {
        let h = gaussian_matrix(&mut trial_rng(seed, t), n as usize, m as usize);
        let eigs = gram_eigs(&h);
        for (a, p) in acc.iter_mut().zip(&powers) {
            *a += log2_det_from_eigs(&eigs, p / m as f64);
        }
    }
    let trials = grid.trials_per_point as f64;
    Ok(acc.into_iter().map(|a| a / trials).collect())
}

/// Desired columns after projection onto the orthogonal complement of the
/// interference subspace; `None` when the projection loses rank.
fn projected_desired(
    desired: &DMatrix<Complex64>,
    interference: &DMatrix<Complex64>,
) -> Option<DMatrix<Complex64>> {
    let rows = desired.nrows();
    let mut eff = desired.clone();
    if interference.ncols() > 0 {
        let svd = interference.clone().svd(true, false);
        let u = svd.u.as_ref().expect("left singular vectors requested");
        let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let tol =
            crate::achievability::RANK_TOLERANCE * max * rows.max(interference.ncols()) as f64;
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if s > tol {
                let col = u.column(k);
                let coef = col.adjoint() * &eff;
                eff -= col * coef;
            }
        }
    }
    let sv = sorted_singular_values(&eff);
    (rank_of(&sv, rows, eff.ncols()) == desired.ncols()).then_some(eff)
}

/// Per-user ergodic rates (`rates[point][user]`) of a time-sharing scheme.
/// In each phase every active user sends `s` streams with power `P/s` each
/// and its receiver zero-forces the interference.
pub fn scheme_rate(
    config: &AntennaConfig,
    certificate: &TimeSharingCertificate,
    grid: &SnrGrid,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    let users = config.users();
    let powers = grid.powers();
    let mut rates = vec![vec![0.0; users]; powers.len()];
    let trials = grid.trials_per_point;
    for (k, phase) in certificate.phases.iter().enumerate() {
        let s = phase.allocation.streams();
        if s.len() != users {
            return Err(DofError::DimensionMismatch {
                expected: users,
                actual: s.len(),
            });
        }
        if s.iter().all(|&x| x == 0) {
            continue;
        }
        let w = phase.weight.to_f64();
        let phase_seed = mix(seed, k as u64);
        for t in 0..trials {
            let draw = NetworkDraw::sample(config, s, &mut trial_rng(phase_seed, t));
            for i in (0..users).filter(|&i| s[i] > 0) {
                let eff = projected_desired(&draw.received(i, i), &draw.interference(i, s))
                    .ok_or_else(|| {
                        DofError::domain(format!(
                            "phase {:?} is not zero-forcing feasible at user {}",
                            s,
                            i + 1
                        ))
                    })?;
                let eigs = gram_eigs(&eff);
                for (row, p) in rates.iter_mut().zip(&powers) {
                    row[i] += w * log2_det_from_eigs(&eigs, p / s[i] as f64) / trials as f64;
                }
            }
        }
    }
    Ok(rates)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeEstimate {
    pub slopes: Vec<f64>,
    pub intercepts: Vec<f64>,
    pub residual_rms: Vec<f64>,
    /// 95% confidence half-width of each slope.
    pub ci_half_width: Vec<f64>,
}

/// Least-squares fit of each user's rate against `log₂ P`.
pub fn estimate_slope(grid: &SnrGrid, rates: &[Vec<f64>]) -> Result<SlopeEstimate> {
    let x = grid.log2_powers();
    let n = x.len();
    if rates.len() != n {
        return Err(DofError::DimensionMismatch {
            expected: n,
            actual: rates.len(),
        });
    }
    let users = rates.first().map_or(0, |r| r.len());
    if users == 0 || rates.iter().any(|r| r.len() != users) {
        return Err(DofError::domain(
            "every grid point needs the same nonzero number of rates",
        ));
    }
    if rates.iter().flatten().any(|r| !r.is_finite()) {
        return Err(DofError::domain("rates must be finite"));
    }
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|v| (v - mean_x).powi(2)).sum();
    if sxx <= 0.0 || n < MIN_POINTS {
        return Err(DofError::domain("degenerate SNR grid"));
    }
    let df = (n - 2) as f64;
    let t = StudentsT::new(0.0, 1.0, df)
        .map_err(|e| DofError::domain(e.to_string()))?
        .inverse_cdf(0.975);
    let mut est = SlopeEstimate {
        slopes: vec![],
        intercepts: vec![],
        residual_rms: vec![],
        ci_half_width: vec![],
    };
    for u in 0..users {
        let y: Vec<f64> = rates.iter().map(|r| r[u]).collect();
        let mean_y = y.iter().sum::<f64>() / n as f64;
        let sxy: f64 = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - mean_x) * (b - mean_y))
            .sum();
        let slope = sxy / sxx;
        let intercept = mean_y - slope * mean_x;
        let sse: f64 = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - intercept - slope * a).powi(2))
            .sum();
        est.slopes.push(slope);
        est.intercepts.push(intercept);
        est.residual_rms.push((sse / n as f64).sqrt());
        est.ci_half_width.push(t * (sse / df / sxx).sqrt());
    }
    Ok(est)
}
