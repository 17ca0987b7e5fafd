//! Zero-forcing achievability oracle.
//!
//! Each trial draws i.i.d. complex Gaussian channels and precoders. A
//! receiver decodes its `s` streams when, after projecting out the
//! interference subspace, the desired columns keep full rank:
//!
//! ```text
//! rank [desired | interference] = s + rank [interference]
//! ```
//!
//! A singular value counts as nonzero when it exceeds
//! `RANK_TOLERANCE · σ_max · max(rows, cols)`. The rank conditions hold
//! with probability one or zero, so a verdict that is neither all-success
//! nor all-failure is reported as ambiguous rather than rounded.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{DofError, Result};
use crate::polytope::{hull_from_points, Point2, Polytope2D};
use crate::rational::Rational;
use crate::regions::{bc2_no_csit, crc_inner, ic_inner, AntennaConfig, ChannelClass};
use crate::rng::{gaussian_matrix, trial_rng};

pub const RANK_TOLERANCE: f64 = 1e-9;

/// Streams per user (per pair) in one phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StreamAllocation(pub Vec<u32>);

impl StreamAllocation {
    pub fn streams(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_point(&self) -> Option<Point2> {
        match self.0.as_slice() {
            &[a, b] => Some(Point2::new(Rational::from(a), Rational::from(b))),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
    Ambiguous,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub allocation: StreamAllocation,
    pub trials: u64,
    pub successes: u64,
    pub verdict: Verdict,
    /// Smallest `σ_k / σ_max` over successful decodes, `k` being the rank
    /// the decode needed. `None` when nothing had to be decoded.
    pub min_singular_ratio: Option<f64>,
}

/// The transmit antennas (indices into the stacked array of all
/// transmitters) that carry each user's streams.
fn stream_spans(config: &AntennaConfig) -> Vec<Range<usize>> {
    let tx = config.tx();
    let total: usize = tx.iter().map(|&m| m as usize).sum();
    let mut offsets = Vec::with_capacity(tx.len());
    let mut acc = 0;
    for &m in tx {
        offsets.push(acc..acc + m as usize);
        acc += m as usize;
    }
    match config.class() {
        ChannelClass::Bc2 | ChannelClass::Bck => vec![0..total; config.users()],
        ChannelClass::Ic2 | ChannelClass::Ick => offsets,
        // the primary message may ride on every antenna, each cognitive
        // transmitter's own message only on its own
        ChannelClass::Crc2 | ChannelClass::Crck => {
            offsets[0] = 0..total;
            offsets
        }
    }
}

pub(crate) fn rank_of(sv: &[f64], rows: usize, cols: usize) -> usize {
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return 0;
    }
    let tol = RANK_TOLERANCE * max * rows.max(cols) as f64;
    sv.iter().filter(|&&s| s > tol).count()
}

pub(crate) fn sorted_singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

fn hstack(rows: usize, blocks: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.columns_mut(at, b.ncols()).copy_from(b);
        at += b.ncols();
    }
    out
}

/// One draw of every channel and precoder in the network.
pub(crate) struct NetworkDraw {
    /// Per receiver, `N_i × (all transmit antennas)`.
    channels: Vec<DMatrix<Complex64>>,
    /// Per user, `|span| × s_i`.
    precoders: Vec<DMatrix<Complex64>>,
    spans: Vec<Range<usize>>,
}

impl NetworkDraw {
    pub(crate) fn sample<R: Rng>(config: &AntennaConfig, alloc: &[u32], rng: &mut R) -> Self {
        let total: usize = config.tx().iter().map(|&m| m as usize).sum();
        let channels = config
            .rx()
            .iter()
            .map(|&n| gaussian_matrix(rng, n as usize, total))
            .collect();
        let spans = stream_spans(config);
        let precoders = spans
            .iter()
            .zip(alloc)
            .map(|(sp, &s)| gaussian_matrix(rng, sp.len(), s as usize))
            .collect();
        NetworkDraw {
            channels,
            precoders,
            spans,
        }
    }

    /// Image of user `j`'s streams at receiver `i`.
    pub(crate) fn received(&self, i: usize, j: usize) -> DMatrix<Complex64> {
        let h = &self.channels[i];
        let sp = &self.spans[j];
        h.columns(sp.start, sp.len()) * &self.precoders[j]
    }

    /// Interference columns at receiver `i` from every other active user.
    pub(crate) fn interference(&self, i: usize, alloc: &[u32]) -> DMatrix<Complex64> {
        let blocks: Vec<_> = (0..alloc.len())
            .filter(|&j| j != i && alloc[j] > 0)
            .map(|j| self.received(i, j))
            .collect();
        hstack(self.channels[i].nrows(), &blocks)
    }
}

/// Rank test at one receiver; `Some(ratio)` on success.
pub(crate) fn receiver_decodes(
    desired: &DMatrix<Complex64>,
    interference: &DMatrix<Complex64>,
) -> Option<f64> {
    let rows = desired.nrows();
    let s = desired.ncols();
    let sv_int = sorted_singular_values(interference);
    let r_int = rank_of(&sv_int, rows, interference.ncols());
    let combined = hstack(rows, &[desired.clone(), interference.clone()]);
    let sv = sorted_singular_values(&combined);
    let need = s + r_int;
    if rank_of(&sv, rows, combined.ncols()) != need {
        return None;
    }
    Some(sv[need - 1] / sv[0])
}

fn check_alloc(config: &AntennaConfig, alloc: &StreamAllocation) -> Result<()> {
    if alloc.0.len() != config.users() {
        return Err(DofError::DimensionMismatch {
            expected: config.users(),
            actual: alloc.0.len(),
        });
    }
    Ok(())
}

/// Monte Carlo zero-forcing feasibility of one allocation.
pub fn zf_feasible(
    config: &AntennaConfig,
    alloc: &StreamAllocation,
    trials: u64,
    seed: u64,
) -> Result<FeasibilityReport> {
    check_alloc(config, alloc)?;
    if trials == 0 {
        return Err(DofError::domain("at least one trial is required"));
    }
    let s = alloc.streams();
    let mut successes = 0;
    let mut min_ratio: Option<f64> = None;
    if s.iter().all(|&x| x == 0) {
        successes = trials;
    } else {
        for t in 0..trials {
            let draw = NetworkDraw::sample(config, s, &mut trial_rng(seed, t));
            let mut ok = true;
            for i in (0..s.len()).filter(|&i| s[i] > 0) {
                match receiver_decodes(&draw.received(i, i), &draw.interference(i, s)) {
                    Some(ratio) => min_ratio = Some(min_ratio.map_or(ratio, |m: f64| m.min(ratio))),
                    None => ok = false,
                }
            }
            successes += ok as u64;
        }
    }
    let verdict = match successes {
        x if x == trials => Verdict::Feasible,
        0 => Verdict::Infeasible,
        _ => Verdict::Ambiguous,
    };
    Ok(FeasibilityReport {
        allocation: alloc.clone(),
        trials,
        successes,
        verdict,
        min_singular_ratio: min_ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub allocation: StreamAllocation,
    pub weight: Rational,
}

/// Time sharing between oracle-feasible allocations that lands exactly on
/// `target`. Any leftover time fraction is idle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSharingCertificate {
    pub target: Point2,
    pub phases: Vec<Phase>,
}

impl TimeSharingCertificate {
    pub fn total_weight(&self) -> Rational {
        self.phases
            .iter()
            .fold(Rational::ZERO, |acc, p| acc + p.weight)
    }

    /// `Σ wₖ sₖ = target` exactly, weights positive and summing to at most 1.
    pub fn is_consistent(&self) -> bool {
        let mut acc = Point2::ORIGIN;
        for p in &self.phases {
            let Some(x) = p.allocation.as_point() else {
                return false;
            };
            if !p.weight.is_positive() {
                return false;
            }
            acc = Point2 {
                d1: acc.d1 + p.weight * x.d1,
                d2: acc.d2 + p.weight * x.d2,
            };
        }
        acc == self.target && self.total_weight() <= Rational::ONE
    }
}

/// Oracle results over the integer grid of a two-user configuration.
///
/// Allocations are explored row by row (`s1` fixed, `s2` increasing) and a
/// row stops at its first non-feasible entry, as does the sweep over `s1`
/// at the first non-feasible `(s1, 0)`: decodability is monotone in the
/// number of streams, so nothing beyond those points can be feasible.
#[derive(Clone, Debug)]
pub struct FeasibleSet {
    pub config: AntennaConfig,
    pub trials: u64,
    pub seed: u64,
    /// Largest per-user stream count considered.
    pub bound: u32,
    pub reports: Vec<FeasibilityReport>,
}

impl FeasibleSet {
    pub fn explore(config: &AntennaConfig, trials: u64, seed: u64) -> Result<Self> {
        if config.users() != 2 {
            return Err(DofError::domain(
                "grid exploration is for two-user channels",
            ));
        }
        let bound = config
            .tx()
            .iter()
            .chain(config.rx())
            .copied()
            .max()
            .unwrap_or(0);
        let mut reports = Vec::new();
        'rows: for s1 in 0..=bound {
            for s2 in 0..=bound {
                let rep = zf_feasible(config, &StreamAllocation(vec![s1, s2]), trials, seed)?;
                let stop = rep.verdict != Verdict::Feasible;
                reports.push(rep);
                if stop {
                    if s2 == 0 {
                        break 'rows;
                    }
                    break;
                }
            }
        }
        Ok(FeasibleSet {
            config: config.clone(),
            trials,
            seed,
            bound,
            reports,
        })
    }

    pub fn feasible(&self) -> impl Iterator<Item = &FeasibilityReport> {
        self.reports
            .iter()
            .filter(|r| r.verdict == Verdict::Feasible)
    }

    pub fn ambiguous(&self) -> Vec<&FeasibilityReport> {
        self.reports
            .iter()
            .filter(|r| r.verdict == Verdict::Ambiguous)
            .collect()
    }

    pub fn feasible_points(&self) -> Vec<Point2> {
        self.feasible()
            .filter_map(|r| r.allocation.as_point())
            .collect()
    }

    /// Downward-closed hull of the feasible allocations.
    pub fn hull(&self) -> Polytope2D {
        let mut pts = self.feasible_points();
        pts.push(Point2::ORIGIN);
        hull_from_points(&pts).expect("allocations are nonnegative")
    }

    /// Exact convex combination (with idle time) of at most two feasible
    /// allocations hitting `target`. In the plane every point of the hull of
    /// the allocations and the origin lies in such a triangle.
    pub fn certify(&self, target: Point2) -> Option<TimeSharingCertificate> {
        let cert = |phases: Vec<(Point2, Rational)>| {
            let phases = phases
                .into_iter()
                .map(|(p, w)| Phase {
                    allocation: StreamAllocation(vec![to_u32(p.d1), to_u32(p.d2)]),
                    weight: w,
                })
                .collect();
            Some(TimeSharingCertificate { target, phases })
        };
        if !target.is_nonnegative() {
            return None;
        }
        if target == Point2::ORIGIN {
            return cert(vec![(Point2::ORIGIN, Rational::ONE)]);
        }
        let mut pts: Vec<Point2> = self
            .feasible_points()
            .into_iter()
            .filter(|p| *p != Point2::ORIGIN)
            .collect();
        pts.sort_by_key(|p| std::cmp::Reverse((p.d1, p.d2)));

        // a single phase, possibly with idle time
        for &p in &pts {
            if let Some(w) = scale_to(p, target) {
                return cert(vec![(p, w)]);
            }
        }
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                let det = p.d1 * q.d2 - p.d2 * q.d1;
                if det.is_zero() {
                    continue;
                }
                let a = (target.d1 * q.d2 - target.d2 * q.d1) / det;
                let b = (p.d1 * target.d2 - p.d2 * target.d1) / det;
                if a.is_positive() && b.is_positive() && a + b <= Rational::ONE {
                    return cert(vec![(p, a), (q, b)]);
                }
            }
        }
        None
    }
}

fn to_u32(x: Rational) -> u32 {
    debug_assert!(x.is_integer());
    x.num() as u32
}

/// `w` with `target = w·p`, `0 < w ≤ 1`.
fn scale_to(p: Point2, target: Point2) -> Option<Rational> {
    let w = if !p.d1.is_zero() {
        target.d1 / p.d1
    } else {
        target.d2 / p.d2
    };
    let hit = p.d1 * w == target.d1 && p.d2 * w == target.d2;
    (hit && w.is_positive() && w <= Rational::ONE).then_some(w)
}

/// Search for a time-sharing certificate of `target`. `Ok(None)` means the
/// search over allocations with at most `max antenna count` streams per user
/// failed; it does not prove the point unachievable.
pub fn certify_corner(
    config: &AntennaConfig,
    target: Point2,
    trials: u64,
    seed: u64,
) -> Result<Option<TimeSharingCertificate>> {
    Ok(FeasibleSet::explore(config, trials, seed)?.certify(target))
}

/// Inner bound the closed forms give for a two-user configuration.
pub fn closed_form_inner(config: &AntennaConfig) -> Result<Polytope2D> {
    let (tx, rx) = (config.tx(), config.rx());
    match config.class() {
        ChannelClass::Bc2 => Ok(bc2_no_csit(tx[0], rx[0], rx[1])),
        ChannelClass::Ic2 => Ok(ic_inner(tx[0], rx[0], tx[1], rx[1])),
        ChannelClass::Crc2 => Ok(crc_inner(tx[0], rx[0], tx[1], rx[1])),
        c => Err(DofError::domain(format!("{c} has no planar inner bound"))),
    }
}

#[derive(Clone, Debug)]
pub struct GridCheck {
    pub expected: Polytope2D,
    pub hull: Polytope2D,
    /// Vertices of the closed-form region the oracle's hull misses.
    pub missing: Vec<Point2>,
    /// Vertices of the oracle's hull outside the closed-form region.
    pub extra: Vec<Point2>,
    /// Integer points of the closed-form region with no certificate.
    pub uncertified: Vec<Point2>,
    pub ambiguous: Vec<FeasibilityReport>,
    pub feasible_set: FeasibleSet,
}

impl GridCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.uncertified.is_empty()
            && self.ambiguous.is_empty()
    }

    pub fn hull_matches(&self) -> bool {
        self.hull.set_eq(&self.expected)
    }
}

/// Cross-check the closed-form inner bound of a two-user configuration
/// against the hull of oracle-feasible allocations.
pub fn inner_bound_grid_check(config: &AntennaConfig, trials: u64, seed: u64) -> Result<GridCheck> {
    let expected = closed_form_inner(config)?;
    let feasible_set = FeasibleSet::explore(config, trials, seed)?;
    let hull = feasible_set.hull();
    let missing = expected.gap_vertices(&hull);
    let extra = hull.gap_vertices(&expected);
    let mut uncertified = Vec::new();
    let (a_max, b_max) = (expected.d1_max(), expected.d2_max());
    for a in 0..=a_max.num() / a_max.den() {
        for b in 0..=b_max.num() / b_max.den() {
            let p = Point2::new(a, b);
            if expected.contains(p) && feasible_set.certify(p).is_none() {
                uncertified.push(p);
            }
        }
    }
    let ambiguous = feasible_set.ambiguous().into_iter().cloned().collect();
    Ok(GridCheck {
        expected,
        hull,
        missing,
        extra,
        uncertified,
        ambiguous,
        feasible_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn alloc(a: u32, b: u32) -> StreamAllocation {
        StreamAllocation(vec![a, b])
    }

    #[test]
    fn ic_2344_allocations() {
        let ic = AntennaConfig::ic2(2, 3, 4, 4).unwrap();
        let ok = zf_feasible(&ic, &alloc(2, 1), 50, 1).unwrap();
        assert_eq!(ok.verdict, Verdict::Feasible);
        assert!(ok.min_singular_ratio.unwrap() > 1e-6);
        // 2 + 2 independent columns cannot fit in N1 = 3 dimensions
        let bad = zf_feasible(&ic, &alloc(2, 2), 50, 1).unwrap();
        assert_eq!((bad.verdict, bad.successes), (Verdict::Infeasible, 0));
    }

    #[test]
    fn zero_allocation_is_trivially_feasible() {
        for c in [
            AntennaConfig::ic2(1, 1, 1, 1).unwrap(),
            AntennaConfig::bck(2, vec![1, 1, 1]).unwrap(),
        ] {
            let z = StreamAllocation(vec![0; c.users()]);
            let r = zf_feasible(&c, &z, 5, 0).unwrap();
            assert_eq!(
                (r.verdict, r.successes, r.min_singular_ratio),
                (Verdict::Feasible, 5, None)
            );
        }
    }

    #[test]
    fn bad_inputs() {
        let c = AntennaConfig::ic2(1, 1, 1, 1).unwrap();
        assert!(matches!(
            zf_feasible(&c, &StreamAllocation(vec![1]), 5, 0),
            Err(DofError::DimensionMismatch { .. })
        ));
        assert!(zf_feasible(&c, &alloc(1, 0), 0, 0).is_err());
    }

    #[test]
    fn more_streams_than_antennas_fail() {
        // two streams from a single antenna collapse to rank one
        let c = AntennaConfig::ic2(1, 4, 1, 4).unwrap();
        assert_eq!(
            zf_feasible(&c, &alloc(2, 0), 20, 3).unwrap().verdict,
            Verdict::Infeasible
        );
        // cognition lets the primary use both transmitters
        let crc = AntennaConfig::crc2(1, 4, 1, 4).unwrap();
        assert_eq!(
            zf_feasible(&crc, &alloc(2, 0), 20, 3).unwrap().verdict,
            Verdict::Feasible
        );
    }

    #[test]
    fn deterministic_reports() {
        let c = AntennaConfig::crc2(3, 5, 2, 4).unwrap();
        let a = zf_feasible(&c, &alloc(2, 2), 30, 9).unwrap();
        let b = zf_feasible(&c, &alloc(2, 2), 30, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn certificates() {
        let ic = AntennaConfig::ic2(2, 3, 4, 4).unwrap();
        let c = certify_corner(&ic, Point2::new(2, 1), 20, 1)
            .unwrap()
            .unwrap();
        assert_eq!(
            c.phases,
            vec![Phase {
                allocation: alloc(2, 1),
                weight: Rational::ONE
            }]
        );
        assert!(certify_corner(&ic, Point2::new(2, q(4, 3)), 20, 1)
            .unwrap()
            .is_none());
        let origin = certify_corner(&ic, Point2::ORIGIN, 20, 1).unwrap().unwrap();
        assert!(origin.is_consistent());

        let bc = AntennaConfig::bc2(3, 2, 1).unwrap();
        let c = certify_corner(&bc, Point2::new(1, q(1, 2)), 20, 1)
            .unwrap()
            .unwrap();
        assert_eq!(
            c.phases,
            vec![
                Phase {
                    allocation: alloc(2, 0),
                    weight: q(1, 2)
                },
                Phase {
                    allocation: alloc(0, 1),
                    weight: q(1, 2)
                }
            ]
        );
        assert!(c.is_consistent());

        let k = AntennaConfig::bck(2, vec![1, 1, 1]).unwrap();
        assert!(certify_corner(&k, Point2::ORIGIN, 5, 1).is_err());
    }

    #[test]
    fn grid_check_examples() {
        let cases = [
            (
                AntennaConfig::ic2(1, 1, 1, 1).unwrap(),
                vec![Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1)],
            ),
            (
                AntennaConfig::ic2(3, 2, 3, 2).unwrap(),
                vec![Point2::new(0, 0), Point2::new(2, 0), Point2::new(0, 2)],
            ),
            (
                AntennaConfig::crc2(3, 4, 3, 2).unwrap(),
                vec![Point2::new(0, 0), Point2::new(4, 0), Point2::new(0, 2)],
            ),
        ];
        for (c, vertices) in cases {
            let g = inner_bound_grid_check(&c, 30, 1).unwrap();
            assert!(g.passed(), "{c}: {g:?}");
            assert_eq!(g.hull.vertices(), vertices.as_slice());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dropping_streams_keeps_feasibility(
            class in 0..3usize, m1 in 1u32..5, n1 in 1u32..5, m2 in 1u32..5, n2 in 1u32..5,
            s1 in 0u32..5, s2 in 0u32..5, d1 in 0u32..3, d2 in 0u32..3,
        ) {
            let c = match class {
                0 => AntennaConfig::ic2(m1, n1, m2, n2).unwrap(),
                1 => AntennaConfig::crc2(m1, n1, m2, n2).unwrap(),
                _ => AntennaConfig::bc2(m1, n1, n2).unwrap(),
            };
            let big = zf_feasible(&c, &alloc(s1, s2), 10, 5).unwrap();
            prop_assert!(big.verdict != Verdict::Ambiguous);
            if big.verdict == Verdict::Feasible {
                let small = alloc(s1.saturating_sub(d1), s2.saturating_sub(d2));
                prop_assert_eq!(zf_feasible(&c, &small, 10, 6).unwrap().verdict, Verdict::Feasible);
            }
        }
    }
}
