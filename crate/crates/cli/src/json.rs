//! JSON shapes of the reports. Rationals are always `"num/den"` strings;
//! the `*_approx` fields are convenience decimals and are ignored on input.

use std::fmt;
use std::str::FromStr;

use dofregion::achievability::{FeasibilityReport, TimeSharingCertificate};
use dofregion::ratesim::{SlopeEstimate, SnrGrid};
use dofregion::{
    AntennaConfig, CaseLabel, Halfspace, Point2, Polytope2D, Rational, Region, SimplexRegion,
};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exact;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"num/den\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                Rational::from_str(v).map(Exact).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

fn exacts(v: &[Rational]) -> Vec<Exact> {
    v.iter().copied().map(Exact).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointJson {
    pub d1: Exact,
    pub d2: Exact,
    #[serde(default, skip_deserializing)]
    pub d1_approx: f64,
    #[serde(default, skip_deserializing)]
    pub d2_approx: f64,
}

impl From<Point2> for PointJson {
    fn from(p: Point2) -> Self {
        PointJson {
            d1: Exact(p.d1),
            d2: Exact(p.d2),
            d1_approx: p.d1.to_f64(),
            d2_approx: p.d2.to_f64(),
        }
    }
}

impl PointJson {
    pub fn point(&self) -> Point2 {
        Point2 {
            d1: self.d1.0,
            d2: self.d2.0,
        }
    }
}

pub fn points(v: &[Point2]) -> Vec<PointJson> {
    v.iter().copied().map(PointJson::from).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HalfspaceJson {
    pub a1: Exact,
    pub a2: Exact,
    pub b: Exact,
    #[serde(default, skip_deserializing)]
    pub text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionJson {
    Planar {
        halfspaces: Vec<HalfspaceJson>,
        vertices: Vec<PointJson>,
        max_sum: Exact,
    },
    Simplex {
        weights: Vec<Exact>,
        intercepts: Vec<Exact>,
        max_sum: Exact,
        text: String,
    },
}

impl RegionJson {
    pub fn planar(p: &Polytope2D) -> Self {
        let halfspaces = p
            .halfspaces()
            .iter()
            .map(|h| HalfspaceJson {
                a1: Exact(h.a1()),
                a2: Exact(h.a2()),
                b: Exact(h.b()),
                text: h.to_string(),
            })
            .collect();
        RegionJson::Planar {
            halfspaces,
            vertices: points(p.vertices()),
            max_sum: Exact(p.max_sum()),
        }
    }

    pub fn simplex(s: &SimplexRegion) -> Self {
        RegionJson::Simplex {
            weights: exacts(s.weights()),
            intercepts: exacts(&s.intercepts()),
            max_sum: Exact(s.max_sum()),
            text: s.to_string(),
        }
    }

    pub fn from_region(r: &Region) -> Self {
        match r {
            Region::Planar(p) => Self::planar(p),
            Region::Simplex(s) => Self::simplex(s),
        }
    }

    /// Rebuild the region from its halfspaces (planar) or weights (simplex).
    pub fn to_region(&self) -> dofregion::Result<Region> {
        match self {
            RegionJson::Planar { halfspaces, .. } => {
                let hs = halfspaces
                    .iter()
                    .map(|h| Halfspace::new(h.a1.0, h.a2.0, h.b.0))
                    .collect::<dofregion::Result<Vec<_>>>()?;
                Ok(Region::Planar(Polytope2D::from_halfspaces(&hs)?))
            }
            RegionJson::Simplex { weights, .. } => Ok(Region::Simplex(SimplexRegion::new(
                weights.iter().map(|w| w.0).collect(),
            )?)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConfigJson {
    pub class: String,
    pub tx: Vec<u32>,
    pub rx: Vec<u32>,
    pub text: String,
}

impl From<&AntennaConfig> for ConfigJson {
    fn from(c: &AntennaConfig) -> Self {
        ConfigJson {
            class: c.class().as_str().into(),
            tx: c.tx().to_vec(),
            rx: c.rx().to_vec(),
            text: c.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LabelJson {
    pub class: String,
    pub case_id: String,
    pub exact: bool,
    pub theorem_ref: String,
}

impl From<&CaseLabel> for LabelJson {
    fn from(l: &CaseLabel) -> Self {
        LabelJson {
            class: l.class.as_str().into(),
            case_id: l.case_id.as_str().into(),
            exact: l.exact,
            theorem_ref: l.theorem_ref.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FeasibilityJson {
    pub allocation: Vec<u32>,
    pub trials: u64,
    pub successes: u64,
    pub verdict: String,
    pub min_singular_ratio: Option<f64>,
}

impl From<&FeasibilityReport> for FeasibilityJson {
    fn from(r: &FeasibilityReport) -> Self {
        FeasibilityJson {
            allocation: r.allocation.0.clone(),
            trials: r.trials,
            successes: r.successes,
            verdict: r.verdict.as_str().into(),
            min_singular_ratio: r.min_singular_ratio,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PhaseJson {
    pub allocation: Vec<u32>,
    pub weight: Exact,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub target: PointJson,
    pub phases: Vec<PhaseJson>,
    pub total_weight: Exact,
}

impl From<&TimeSharingCertificate> for CertificateJson {
    fn from(c: &TimeSharingCertificate) -> Self {
        CertificateJson {
            target: c.target.into(),
            phases: c
                .phases
                .iter()
                .map(|p| PhaseJson {
                    allocation: p.allocation.0.clone(),
                    weight: Exact(p.weight),
                })
                .collect(),
            total_weight: Exact(c.total_weight()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SlopeJson {
    pub slopes: Vec<f64>,
    pub intercepts: Vec<f64>,
    pub residual_rms: Vec<f64>,
    pub ci_half_width: Vec<f64>,
}

impl From<&SlopeEstimate> for SlopeJson {
    fn from(e: &SlopeEstimate) -> Self {
        SlopeJson {
            slopes: e.slopes.clone(),
            intercepts: e.intercepts.clone(),
            residual_rms: e.residual_rms.clone(),
            ci_half_width: e.ci_half_width.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridJson {
    pub snr_db: Vec<f64>,
    pub trials_per_point: u64,
}

impl From<&SnrGrid> for GridJson {
    fn from(g: &SnrGrid) -> Self {
        GridJson {
            snr_db: g.points_db().to_vec(),
            trials_per_point: g.trials_per_point(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dofregion::rational::q;
    use dofregion::regions::{bck_no_csit, ic_inner};

    #[test]
    fn rationals_are_strings() {
        let v = serde_json::to_value(PointJson::from(Point2::new(2, q(4, 3)))).unwrap();
        assert_eq!(v["d1"], "2/1");
        assert_eq!(v["d2"], "4/3");
        let back: PointJson = serde_json::from_value(v).unwrap();
        assert_eq!(back.point(), Point2::new(2, q(4, 3)));
        assert!(serde_json::from_str::<Exact>("1.5").is_err());
        assert!(serde_json::from_str::<Exact>("\"1/0\"").is_err());
    }

    #[test]
    fn regions_round_trip() {
        for r in [
            Region::Planar(ic_inner(2, 3, 4, 4)),
            Region::Simplex(bck_no_csit(2, &[1, 3, 2])),
        ] {
            let text = serde_json::to_string(&RegionJson::from_region(&r)).unwrap();
            let back: RegionJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_region().unwrap(), r);
        }
    }
}
