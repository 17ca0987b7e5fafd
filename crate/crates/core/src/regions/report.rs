use crate::error::Result;
use crate::polytope::{Point2, Polytope2D, SimplexRegion};

use super::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Planar(Polytope2D),
    Simplex(SimplexRegion),
}

impl Region {
    pub fn as_planar(&self) -> Option<&Polytope2D> {
        match self {
            Region::Planar(p) => Some(p),
            Region::Simplex(_) => None,
        }
    }

    pub fn as_simplex(&self) -> Option<&SimplexRegion> {
        match self {
            Region::Simplex(s) => Some(s),
            Region::Planar(_) => None,
        }
    }

    pub fn is_subset(&self, other: &Region) -> Result<bool> {
        match (self, other) {
            (Region::Planar(a), Region::Planar(b)) => Ok(a.is_subset(b)),
            (Region::Simplex(a), Region::Simplex(b)) => a.is_subset(b),
            (Region::Planar(a), Region::Simplex(b)) => Ok(a.is_subset(&b.to_polytope()?)),
            (Region::Simplex(a), Region::Planar(b)) => Ok(a.to_polytope()?.is_subset(b)),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Planar(p) => p.fmt(f),
            Region::Simplex(s) => s.fmt(f),
        }
    }
}

/// Everything known about one configuration.
#[derive(Clone, Debug)]
pub struct RegionReport {
    pub config: AntennaConfig,
    pub label: CaseLabel,
    pub inner: Option<Region>,
    pub outer: Option<Region>,
    /// Absent for K-user classes.
    pub csit: Option<Region>,
    /// `(P1, P2)` for two-user classes.
    pub corner_points: Option<(Point2, Point2)>,
    /// Vertices of the outer bound outside the inner bound.
    pub gap: Vec<Point2>,
    pub flags: Vec<String>,
}

impl RegionReport {
    /// `outer ∩ csit`. Still a valid outer bound since the no-CSIT region
    /// never exceeds the perfect-CSIT one, but it is not a stated result.
    pub fn outer_with_csit(&self) -> Option<Polytope2D> {
        let outer = self.outer.as_ref()?.as_planar()?;
        let csit = self.csit.as_ref()?.as_planar()?;
        outer.intersect(csit).ok()
    }
}

pub fn report(config: &AntennaConfig) -> RegionReport {
    let flags = config.flags();
    let (tx, rx) = (config.tx(), config.rx());
    let two_user =
        |label: CaseLabel, inner: Polytope2D, outer: Polytope2D, csit: Polytope2D, corners| {
            let gap = outer.gap_vertices(&inner);
            RegionReport {
                config: config.clone(),
                label,
                inner: Some(Region::Planar(inner)),
                outer: Some(Region::Planar(outer)),
                csit: Some(Region::Planar(csit)),
                corner_points: Some(corners),
                gap,
                flags: flags.clone(),
            }
        };
    let k_user = |label: CaseLabel, region: Option<SimplexRegion>| RegionReport {
        config: config.clone(),
        label,
        inner: region.clone().map(Region::Simplex),
        outer: region.map(Region::Simplex),
        csit: None,
        corner_points: None,
        gap: Vec::new(),
        flags: flags.clone(),
    };
    match config.class() {
        ChannelClass::Bc2 => {
            let (m, n1, n2) = (tx[0], rx[0], rx[1]);
            let region = bc2_no_csit(m, n1, n2);
            let corners = (Point2::new(r(m.min(n1)), 0), Point2::new(0, r(m.min(n2))));
            let label = CaseLabel::new(
                ChannelClass::Bc2,
                CaseId::Bc,
                true,
                "two-user BC, time division is optimal",
            );
            two_user(label, region.clone(), region, bc2_csit(m, n1, n2), corners)
        }
        ChannelClass::Ic2 => {
            let (m1, n1, m2, n2) = (tx[0], rx[0], tx[1], rx[1]);
            two_user(
                ic_classify(m1, n1, m2, n2),
                ic_inner(m1, n1, m2, n2),
                ic_outer(m1, n1, m2, n2),
                ic_csit(m1, n1, m2, n2),
                ic_corner_points(m1, n1, m2, n2),
            )
        }
        ChannelClass::Crc2 => {
            let (m1, n1, m2, n2) = (tx[0], rx[0], tx[1], rx[1]);
            two_user(
                crc_classify(m1, n1, m2, n2),
                crc_inner(m1, n1, m2, n2),
                crc_outer(m1, n1, m2, n2),
                crc_csit(m1, n1, m2, n2),
                crc_corner_points(m1, n1, m2, n2),
            )
        }
        ChannelClass::Bck => {
            let label = CaseLabel::new(
                ChannelClass::Bck,
                CaseId::Bck,
                true,
                "K-user BC, time division is optimal",
            );
            k_user(label, Some(bck_no_csit(tx[0], rx)))
        }
        ChannelClass::Ick => {
            let region = ick_region(tx, rx).expect("validated config");
            let label = match region {
                Some(_) => CaseLabel::new(
                    ChannelClass::Ick,
                    CaseId::Ick,
                    true,
                    "K-user IC, case Ni<=Mi for all i",
                ),
                None => CaseLabel::new(
                    ChannelClass::Ick,
                    CaseId::IckUnknown,
                    false,
                    "K-user IC, no result unless Ni<=Mi for all i",
                ),
            };
            k_user(label, region)
        }
        ChannelClass::Crck => {
            let region = crck_region(tx, rx).expect("validated config");
            let label = match region {
                Some(_) => CaseLabel::new(
                    ChannelClass::Crck,
                    CaseId::Crck,
                    true,
                    "K-user CRC, case Mi>=Ni for all i>1",
                ),
                None => CaseLabel::new(
                    ChannelClass::Crck,
                    CaseId::CrckUnknown,
                    false,
                    "K-user CRC, no result unless Mi>=Ni for all i>1",
                ),
            };
            k_user(label, region)
        }
    }
}
