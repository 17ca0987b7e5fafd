//! Two-user cognitive radio channel: an IC in which transmitter 2 knows
//! the primary message and may carry it on its own antennas as well.

use crate::polytope::{hull_from_points, Halfspace, Point2, Polytope2D};

use super::ic::{ic_corner_points, overall_bc_outer, weighted};
use super::{planar, r, CaseId, CaseLabel, ChannelClass};

/// `P1` lets both transmitters serve the primary pair; `P2` coincides with
/// the IC's second corner.
pub fn crc_corner_points(m1: u32, n1: u32, m2: u32, n2: u32) -> (Point2, Point2) {
    let p1 = Point2::new(r(n1.min(m1 + m2)), 0);
    let (_, p2) = ic_corner_points(m1, n1, m2, n2);
    (p1, p2)
}

pub fn crc_inner(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let (p1, p2) = crc_corner_points(m1, n1, m2, n2);
    planar(hull_from_points(&[p1, p2, Point2::new(0, r(m2.min(n2)))]))
}

pub fn crc_csit(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let sum = (m1 + m2).min(n1 + n2).min(m2.max(n1));
    planar(Polytope2D::from_halfspaces(&[
        Halfspace::d1_at_most(r((m1 + m2).min(n1))),
        Halfspace::d2_at_most(r(m2.min(n2))),
        Halfspace::sum_at_most(r(sum)),
    ]))
}

/// Cases: A `N2≤M2`; B `N2>M2, M1≥N1`; C `N2>M2, N1>M1`. The C split point
/// `N2 = min(N1, M1+M2)` goes to the exact branch.
pub fn crc_classify(m1: u32, n1: u32, m2: u32, n2: u32) -> CaseLabel {
    let l = |id, exact, why: &str| CaseLabel::new(ChannelClass::Crc2, id, exact, why);
    if n2 <= m2 {
        return l(
            CaseId::CrcA,
            true,
            "CRC inner bound is the region, case N2<=M2",
        );
    }
    if m1 >= n1 {
        return if n1 <= n2 {
            l(
                CaseId::CrcB1,
                true,
                "CRC inner bound is the region, case N2>M2, M1>=N1, N1<=N2",
            )
        } else {
            l(CaseId::CrcB2, false, "CRC outer, case M1>=N1>N2>M2")
        };
    }
    let coop = n1.min(m1 + m2);
    if n2 < coop {
        l(
            CaseId::CrcC1,
            false,
            "CRC outer, case N1>M1, N2>M2, N2<min(N1,M1+M2)",
        )
    } else if n1 >= m2 {
        l(
            CaseId::CrcC2a,
            true,
            "CRC inner bound is the region, case N1>M1, N2>M2, N2>=min(N1,M1+M2), N1>=M2",
        )
    } else {
        l(
            CaseId::CrcC2b,
            true,
            "CRC inner bound is the region, case N2>M2>N1>M1",
        )
    }
}

pub fn crc_outer(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let (rn1, rm2, rn2) = (r(n1), r(m2), r(n2));
    let hs = match crc_classify(m1, n1, m2, n2).case_id {
        CaseId::CrcA => return overall_bc_outer(m1, n1, m2, n2),
        CaseId::CrcB2 => vec![Halfspace::d2_at_most(rm2), weighted(rn1, rn2)],
        CaseId::CrcC1 => vec![
            Halfspace::d2_at_most(rm2),
            weighted(r(n1.min(m1 + m2)), rn2),
        ],
        _ => return crc_inner(m1, n1, m2, n2),
    };
    planar(Polytope2D::from_halfspaces(&hs))
}
