//! Two-user MIMO interference channel.
//!
//! The case tree splits on the signs of `N1−M1` and `N2−M2` (cases A–D);
//! each case is then split further. Cases C and D3 mirror B and D2 under
//! the user swap `(M1,N1) ↔ (M2,N2)`.

use crate::polytope::{hull_from_points, Halfspace, Point2, Polytope2D};

use super::{bc::bc2_no_csit, planar, pos, r, CaseId, CaseLabel, ChannelClass};

/// The two achievable corners of the no-CSIT inner bound.
///
/// `P1` gives user 1 its point-to-point maximum and lets user 2 send only
/// as many streams as fit next to them at receiver 1; `P2` is the mirror.
pub fn ic_corner_points(m1: u32, n1: u32, m2: u32, n2: u32) -> (Point2, Point2) {
    let (m1, n1, m2, n2) = (m1 as i64, n1 as i64, m2 as i64, n2 as i64);
    let p1_d2 = n2.min(n1 - pos(pos(n1 - m1) - m2)) - n2.min(n1).min(m1);
    let p2_d1 = n1.min(n2 - pos(pos(n2 - m2) - m1)) - n1.min(n2).min(m2);
    (
        Point2::new(m1.min(n1), p1_d2),
        Point2::new(p2_d1, m2.min(n2)),
    )
}

/// No-CSIT inner bound: the per-user caps intersected with the weighted-sum
/// line through `P1` and `P2`.
pub fn ic_inner(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let (p1, p2) = ic_corner_points(m1, n1, m2, n2);
    planar(hull_from_points(&[
        Point2::new(r(m1.min(n1)), 0),
        p1,
        p2,
        Point2::new(0, r(m2.min(n2))),
    ]))
}

/// Perfect-CSIT region. Per-user caps are the point-to-point limits
/// `min(Mi, Ni)`.
pub fn ic_csit(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let sum = (m1 + m2).min(n1 + n2).min(m1.max(n2)).min(m2.max(n1));
    planar(Polytope2D::from_halfspaces(&[
        Halfspace::d1_at_most(r(m1.min(n1))),
        Halfspace::d2_at_most(r(m2.min(n2))),
        Halfspace::sum_at_most(r(sum)),
    ]))
}

/// Region of the broadcast channel obtained by letting both transmitters
/// cooperate as one array of `M1+M2` antennas. Valid outer bound for both
/// the IC and the CRC.
pub fn overall_bc_outer(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    bc2_no_csit(m1 + m2, n1, n2)
}

pub fn ic_classify(m1: u32, n1: u32, m2: u32, n2: u32) -> CaseLabel {
    let l = |id, exact, why: &str| CaseLabel::new(ChannelClass::Ic2, id, exact, why);
    match (n1 > m1, n2 > m2) {
        (false, false) => l(
            CaseId::IcA,
            true,
            "IC inner bound is the region, case N1<=M1, N2<=M2",
        ),
        (true, false) if n2 <= n1 => l(
            CaseId::IcB1,
            true,
            "IC inner bound is the region, case N1>M1, N2<=M2, N2<=N1",
        ),
        (true, false) => l(CaseId::IcB2, false, "IC outer, case M2>=N2>N1>M1"),
        (false, true) if n1 <= n2 => l(
            CaseId::IcC1,
            true,
            "IC inner bound is the region, case N2>M2, N1<=M1, N1<=N2",
        ),
        (false, true) => l(
            CaseId::IcC2,
            false,
            "IC outer, case M1>=N1>N2>M2 (mirror of M2>=N2>N1>M1)",
        ),
        (true, true) => {
            if n2 <= m1 {
                l(
                    CaseId::IcD2,
                    m1 == n2,
                    "IC outer, case N1>M1>=N2>M2; exact when M1=N2",
                )
            } else if n1 <= m2 {
                l(
                    CaseId::IcD3,
                    m2 == n1,
                    "IC outer, case N2>M2>=N1>M1 (mirror); exact when M2=N1",
                )
            } else {
                l(
                    CaseId::IcD1,
                    true,
                    "IC inner bound is the region, case N1,N2 > M1,M2",
                )
            }
        }
    }
}

/// Outer bound for the classified case, exactly as the matching converse
/// states it. Exact cases return a region equal to [`ic_inner`].
pub fn ic_outer(m1: u32, n1: u32, m2: u32, n2: u32) -> Polytope2D {
    let (rm1, rn1, rm2, rn2) = (r(m1), r(n1), r(m2), r(n2));
    let hs = match ic_classify(m1, n1, m2, n2).case_id {
        CaseId::IcA => return overall_bc_outer(m1, n1, m2, n2),
        CaseId::IcB2 => vec![Halfspace::d1_at_most(rm1), weighted(rn1, rn2)],
        CaseId::IcC2 => vec![Halfspace::d2_at_most(rm2), weighted(rn1, rn2)],
        CaseId::IcD2 => vec![
            Halfspace::d1_at_most(rm1),
            Halfspace::d2_at_most(rm2),
            weighted(rm1, rn2),
        ],
        CaseId::IcD3 => vec![
            Halfspace::d1_at_most(rm1),
            Halfspace::d2_at_most(rm2),
            weighted(rn1, rm2),
        ],
        _ => return ic_inner(m1, n1, m2, n2),
    };
    planar(Polytope2D::from_halfspaces(&hs))
}

/// `d1/w1 + d2/w2 ≤ 1`
pub(super) fn weighted(w1: crate::rational::Rational, w2: crate::rational::Rational) -> Halfspace {
    Halfspace::new(w2, w1, w1 * w2).expect("positive intercepts")
}
