//! Exhaustive invariant sweeps over small antenna counts.

use std::collections::BTreeMap;

use dofregion::achievability::inner_bound_grid_check;
use dofregion::regions::*;
use dofregion::{CaseId, Point2, Polytope2D};
use serde::Serialize;

use crate::json::{points, PointJson};

pub const MAX_ANTENNAS: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepClass {
    Ic,
    Crc,
    Bc2,
}

impl SweepClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Some(SweepClass::Ic),
            "crc" => Some(SweepClass::Crc),
            "bc2" | "bc" => Some(SweepClass::Bc2),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepClass::Ic => "ic",
            SweepClass::Crc => "crc",
            SweepClass::Bc2 => "bc2",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseCount {
    pub exact: u64,
    pub outer_only: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub config: String,
    pub invariant: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<PointJson>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleSummary {
    pub trials: u64,
    pub seed: u64,
    pub configs_checked: u64,
    pub allocations_tested: u64,
    pub vertices_certified: u64,
    pub ambiguous_allocations: u64,
    /// Smallest singular-value ratio seen on any successful decode.
    pub min_singular_ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub class: &'static str,
    pub max_antennas: u32,
    pub configs: u64,
    pub exact: u64,
    pub outer_only: u64,
    pub cases: BTreeMap<String, CaseCount>,
    pub outer_only_configs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub violations: Vec<Violation>,
}

pub struct OracleOptions {
    pub trials: u64,
    pub seed: u64,
}

struct Checker<'a> {
    config: String,
    out: &'a mut Vec<Violation>,
}

impl Checker<'_> {
    fn check(&mut self, ok: bool, invariant: &str) {
        if !ok {
            self.out.push(Violation {
                config: self.config.clone(),
                invariant: invariant.into(),
                witnesses: vec![],
            });
        }
    }

    fn check_points(&mut self, pts: Vec<Point2>, invariant: &str) {
        if !pts.is_empty() {
            self.out.push(Violation {
                config: self.config.clone(),
                invariant: invariant.into(),
                witnesses: points(&pts),
            });
        }
    }

    fn subset(&mut self, a: &Polytope2D, b: &Polytope2D, invariant: &str) {
        self.check_points(a.gap_vertices(b), invariant);
    }
}

fn grid(dim: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| (1..=max).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn two_pair_checks(
    class: SweepClass,
    m1: u32,
    n1: u32,
    m2: u32,
    n2: u32,
    c: &mut Checker,
) -> CaseLabel {
    let (label, inner, outer, csit, corners) = match class {
        SweepClass::Ic => (
            ic_classify(m1, n1, m2, n2),
            ic_inner(m1, n1, m2, n2),
            ic_outer(m1, n1, m2, n2),
            ic_csit(m1, n1, m2, n2),
            ic_corner_points(m1, n1, m2, n2),
        ),
        _ => (
            crc_classify(m1, n1, m2, n2),
            crc_inner(m1, n1, m2, n2),
            crc_outer(m1, n1, m2, n2),
            crc_csit(m1, n1, m2, n2),
            crc_corner_points(m1, n1, m2, n2),
        ),
    };
    c.subset(&inner, &outer, "inner within outer");
    c.subset(&inner, &csit, "inner within perfect-CSIT region");
    c.check(
        corners.0.is_nonnegative() && corners.1.is_nonnegative(),
        "corner points nonnegative",
    );
    if label.exact {
        c.subset(&outer, &inner, "exact case: outer equals inner");
    } else {
        c.check(
            !outer.is_subset(&inner),
            "outer-only case: outer strictly larger than inner",
        );
    }
    if class == SweepClass::Ic {
        c.check(
            ic_inner(m2, n2, m1, n1) == inner.swap(),
            "swap symmetry of inner bound",
        );
        c.check(
            ic_outer(m2, n2, m1, n1) == outer.swap(),
            "swap symmetry of outer bound",
        );
        c.check(
            ic_csit(m2, n2, m1, n1) == csit.swap(),
            "swap symmetry of perfect-CSIT region",
        );
        c.check(
            ic_classify(m2, n2, m1, n1).exact == label.exact,
            "swap symmetry of exactness",
        );
        c.subset(
            &inner,
            &crc_inner(m1, n1, m2, n2),
            "cognition never shrinks the inner bound",
        );
        c.subset(
            &csit,
            &crc_csit(m1, n1, m2, n2),
            "cognition never shrinks the perfect-CSIT region",
        );
        if label.case_id == CaseId::IcD1 || (label.case_id == CaseId::IcB1 && n2 >= m1) {
            c.check(inner == csit, "inner bound equals perfect-CSIT region");
        }
        if label.case_id == CaseId::IcD2 && m1 == n2 {
            c.check(inner == outer, "boundary M1 = N2 is exact");
        }
    }
    label
}

pub fn sweep(class: SweepClass, max_antennas: u32, oracle: Option<OracleOptions>) -> SweepReport {
    let dim = if class == SweepClass::Bc2 { 3 } else { 4 };
    let mut rep = SweepReport {
        class: class.as_str(),
        max_antennas,
        configs: 0,
        exact: 0,
        outer_only: 0,
        cases: BTreeMap::new(),
        outer_only_configs: vec![],
        oracle: oracle.as_ref().map(|o| OracleSummary {
            trials: o.trials,
            seed: o.seed,
            ..Default::default()
        }),
        violations: vec![],
    };
    for counts in grid(dim, max_antennas) {
        let config = match class {
            SweepClass::Ic => AntennaConfig::ic2(counts[0], counts[1], counts[2], counts[3]),
            SweepClass::Crc => AntennaConfig::crc2(counts[0], counts[1], counts[2], counts[3]),
            SweepClass::Bc2 => AntennaConfig::bc2(counts[0], counts[1], counts[2]),
        }
        .expect("counts are at least 1");
        let text = config.to_string();
        let mut c = Checker {
            config: text.clone(),
            out: &mut rep.violations,
        };
        let label = if class == SweepClass::Bc2 {
            let (m, n1, n2) = (counts[0], counts[1], counts[2]);
            let (no, full) = (bc2_no_csit(m, n1, n2), bc2_csit(m, n1, n2));
            c.subset(&no, &full, "no-CSIT region within perfect-CSIT region");
            c.check(
                (no == full) == (m <= n1.min(n2)),
                "regions coincide exactly when M <= min(N1, N2)",
            );
            report(&config).label
        } else {
            two_pair_checks(class, counts[0], counts[1], counts[2], counts[3], &mut c)
        };

        if let (Some(opts), Some(summary)) = (&oracle, rep.oracle.as_mut()) {
            match inner_bound_grid_check(&config, opts.trials, opts.seed) {
                Ok(g) => {
                    summary.configs_checked += 1;
                    summary.allocations_tested += g.feasible_set.reports.len() as u64;
                    summary.ambiguous_allocations += g.ambiguous.len() as u64;
                    for r in g.feasible_set.feasible() {
                        if let Some(x) = r.min_singular_ratio {
                            summary.min_singular_ratio =
                                Some(summary.min_singular_ratio.map_or(x, |m| m.min(x)));
                        }
                    }
                    c.check_points(
                        g.missing.clone(),
                        "oracle hull reaches every inner-bound vertex",
                    );
                    c.check_points(g.extra.clone(), "oracle hull stays inside the inner bound");
                    c.check_points(
                        g.uncertified.clone(),
                        "every integer point of the inner bound is certified",
                    );
                    c.check(g.ambiguous.is_empty(), "no ambiguous oracle verdicts");
                    let mut uncertified = vec![];
                    for &v in g.expected.vertices() {
                        match g.feasible_set.certify(v) {
                            Some(cert) if cert.is_consistent() => summary.vertices_certified += 1,
                            _ => uncertified.push(v),
                        }
                    }
                    c.check_points(uncertified, "every inner-bound vertex is certified");
                }
                Err(e) => c.check(false, &format!("oracle failed: {e}")),
            }
        }

        rep.configs += 1;
        let entry = rep
            .cases
            .entry(label.case_id.as_str().to_string())
            .or_default();
        if label.exact {
            rep.exact += 1;
            entry.exact += 1;
        } else {
            rep.outer_only += 1;
            entry.outer_only += 1;
            rep.outer_only_configs.push(text);
        }
    }
    rep
}
