use crate::polytope::{hull_from_points, Halfspace, Point2, Polytope2D, SimplexRegion};

use super::{planar, r, simplex};

/// No-CSIT two-user BC: `d1/min(M,N1) + d2/min(M,N2) ≤ 1`.
/// Time division between the two single-user corners achieves all of it.
pub fn bc2_no_csit(m: u32, n1: u32, n2: u32) -> Polytope2D {
    planar(hull_from_points(&[
        Point2::new(r(m.min(n1)), 0),
        Point2::new(0, r(m.min(n2))),
    ]))
}

/// Perfect-CSIT two-user BC.
pub fn bc2_csit(m: u32, n1: u32, n2: u32) -> Polytope2D {
    planar(Polytope2D::from_halfspaces(&[
        Halfspace::d1_at_most(r(m.min(n1))),
        Halfspace::d2_at_most(r(m.min(n2))),
        Halfspace::sum_at_most(r(m.min(n1 + n2))),
    ]))
}

/// No-CSIT K-user BC: `Σ dᵢ/min(M,Nᵢ) ≤ 1`.
pub fn bck_no_csit(m: u32, rx: &[u32]) -> SimplexRegion {
    let intercepts: Vec<_> = rx.iter().map(|&n| r(m.min(n))).collect();
    simplex(SimplexRegion::from_intercepts(&intercepts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Rational};

    #[test]
    fn no_csit_examples() {
        let sum_one = hull_from_points(&[Point2::new(1, 0), Point2::new(0, 1)]).unwrap();
        assert_eq!(bc2_no_csit(2, 1, 1), sum_one);
        assert_eq!(bc2_no_csit(1, 5, 5), sum_one);
        let p = bc2_no_csit(3, 2, 1);
        assert_eq!(p.halfspaces(), &[Halfspace::new(q(1, 2), 1, 1).unwrap()]);
        assert_eq!(
            p.vertices(),
            &[Point2::new(0, 0), Point2::new(2, 0), Point2::new(0, 1)]
        );
    }

    #[test]
    fn csit_examples() {
        let p = bc2_csit(2, 2, 2);
        assert_eq!(
            p.vertices(),
            &[Point2::new(0, 0), Point2::new(2, 0), Point2::new(0, 2)]
        );

        // d1 + d2 <= 3 is redundant next to the two caps
        let rect = bc2_csit(4, 2, 1);
        assert_eq!(
            rect.halfspaces(),
            &[Halfspace::d1_at_most(2), Halfspace::d2_at_most(1)]
        );
        assert_eq!(rect.vertices().len(), 4);

        for (m, n1, n2) in [(2, 2, 3), (1, 4, 2), (3, 3, 3)] {
            assert_eq!(bc2_csit(m, n1, n2), bc2_no_csit(m, n1, n2));
        }
    }

    #[test]
    fn k_user() {
        assert_eq!(bck_no_csit(4, &[1, 1, 1]).weights(), &[Rational::ONE; 3]);
        assert_eq!(bck_no_csit(1, &[7, 2, 5, 3]).weights(), &[Rational::ONE; 4]);
        assert_eq!(
            bck_no_csit(3, &[3, 2, 1]).weights(),
            &[q(1, 3), q(1, 2), Rational::ONE]
        );
    }

    #[test]
    fn k_user_two_matches_two_user() {
        for (m, n1, n2) in [(3, 2, 1), (2, 5, 4), (6, 3, 2)] {
            assert_eq!(
                bck_no_csit(m, &[n1, n2]).to_polytope().unwrap(),
                bc2_no_csit(m, n1, n2)
            );
        }
    }
}
