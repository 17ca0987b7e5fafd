//! Exact 2-D DoF regions and K-dimensional weighted simplices.
//!
//! Every region built here is *downward closed*: it contains the origin, lies
//! in the nonnegative quadrant and contains every point dominated by one of
//! its members. Nonnegativity is implicit and never stored as a halfspace.
//!
//! A [`Polytope2D`] carries both representations. Vertices run
//! counterclockwise from the origin; halfspaces follow the same traversal,
//! one per non-axis edge, so neither list contains redundant entries and two
//! equal sets always produce identical lists.

use std::fmt;

use num_integer::Integer;

use crate::error::{DofError, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point2 {
    pub d1: Rational,
    pub d2: Rational,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 {
        d1: Rational::ZERO,
        d2: Rational::ZERO,
    };

    pub fn new(d1: impl Into<Rational>, d2: impl Into<Rational>) -> Self {
        Point2 {
            d1: d1.into(),
            d2: d2.into(),
        }
    }

    pub fn swap(self) -> Self {
        Point2 {
            d1: self.d2,
            d2: self.d1,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.d1.is_negative() && !self.d2.is_negative()
    }

    fn sub(self, o: Point2) -> Point2 {
        Point2 {
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// `a1·d1 + a2·d2 ≤ b`, scaled so the leading nonzero coefficient is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Halfspace {
    a1: Rational,
    a2: Rational,
    b: Rational,
}

impl Halfspace {
    /// Fails on a zero normal, or when the leading coefficient is negative
    /// (normalizing it to 1 would flip the inequality).
    pub fn new(
        a1: impl Into<Rational>,
        a2: impl Into<Rational>,
        b: impl Into<Rational>,
    ) -> Result<Self> {
        let (a1, a2, b) = (a1.into(), a2.into(), b.into());
        let lead = if !a1.is_zero() { a1 } else { a2 };
        if lead.is_zero() {
            return Err(DofError::domain("halfspace normal must be nonzero"));
        }
        if lead.is_negative() {
            return Err(DofError::domain(
                "halfspace leading coefficient must be positive",
            ));
        }
        Ok(Halfspace {
            a1: a1.checked_div(lead)?,
            a2: a2.checked_div(lead)?,
            b: b.checked_div(lead)?,
        })
    }

    /// `d1/w1 + d2/w2 ≤ 1`, the weighted-sum form with intercepts `w1`, `w2`.
    pub fn weighted_sum(w1: impl Into<Rational>, w2: impl Into<Rational>) -> Result<Self> {
        Halfspace::new(w1.into().recip()?, w2.into().recip()?, Rational::ONE)
    }

    /// `d1 ≤ c`
    pub fn d1_at_most(c: impl Into<Rational>) -> Self {
        Halfspace {
            a1: Rational::ONE,
            a2: Rational::ZERO,
            b: c.into(),
        }
    }

    /// `d2 ≤ c`
    pub fn d2_at_most(c: impl Into<Rational>) -> Self {
        Halfspace {
            a1: Rational::ZERO,
            a2: Rational::ONE,
            b: c.into(),
        }
    }

    /// `d1 + d2 ≤ c`
    pub fn sum_at_most(c: impl Into<Rational>) -> Self {
        Halfspace {
            a1: Rational::ONE,
            a2: Rational::ONE,
            b: c.into(),
        }
    }

    pub fn a1(&self) -> Rational {
        self.a1
    }

    pub fn a2(&self) -> Rational {
        self.a2
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn eval(&self, p: Point2) -> Rational {
        self.a1 * p.d1 + self.a2 * p.d2
    }

    pub fn satisfies(&self, p: Point2) -> bool {
        self.eval(p) <= self.b
    }

    pub fn is_tight(&self, p: Point2) -> bool {
        self.eval(p) == self.b
    }

    pub fn swap(&self) -> Self {
        Halfspace::new(self.a2, self.a1, self.b)
            .expect("swapped halfspace of a downward-closed region")
    }

    /// Smallest integer multiple, e.g. `(1, 2/3, 8/3)` → `(3, 2, 8)`.
    pub fn integer_coefficients(&self) -> (i64, i64, i64) {
        let l = self.a1.den().lcm(&self.a2.den()).lcm(&self.b.den());
        let scale = Rational::integer(l);
        let (x, y, z) = (
            (self.a1 * scale).num(),
            (self.a2 * scale).num(),
            (self.b * scale).num(),
        );
        let g = x.gcd(&y).gcd(&z).max(1);
        (x / g, y / g, z / g)
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, z) = self.integer_coefficients();
        let term = |c: i64, v: &str| {
            if c == 1 {
                v.to_string()
            } else {
                format!("{c}*{v}")
            }
        };
        match (x, y) {
            (0, _) => write!(f, "{} <= {z}", term(y, "d2")),
            (_, 0) => write!(f, "{} <= {z}", term(x, "d1")),
            _ => write!(f, "{} + {} <= {z}", term(x, "d1"), term(y, "d2")),
        }
    }
}

/// Bounded, downward-closed convex region of the nonnegative quadrant.
#[derive(Clone, Debug)]
pub struct Polytope2D {
    halfspaces: Vec<Halfspace>,
    vertices: Vec<Point2>,
}

fn cross(o: Point2, a: Point2, b: Point2) -> Rational {
    let (u, v) = (a.sub(o), b.sub(o));
    u.d1 * v.d2 - u.d2 * v.d1
}

/// Counterclockwise hull without collinear points (Andrew's monotone chain).
fn convex_hull(mut pts: Vec<Point2>) -> Vec<Point2> {
    pts.sort_by_key(|p| (p.d1, p.d2));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= Rational::ZERO
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= Rational::ZERO
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Downward closure of conv(points ∪ {0}) within the nonnegative quadrant.
pub fn hull_from_points(points: &[Point2]) -> Result<Polytope2D> {
    if points.is_empty() {
        return Err(DofError::domain("hull of an empty point set"));
    }
    if let Some(p) = points.iter().find(|p| !p.is_nonnegative()) {
        return Err(DofError::domain(format!("negative coordinate in {p}")));
    }
    // The box [0, p] is the hull of its corners, so closing each point
    // against both axes closes the whole hull downward.
    let mut cands = vec![Point2::ORIGIN];
    for &p in points {
        cands.extend([
            p,
            Point2 {
                d1: p.d1,
                d2: Rational::ZERO,
            },
            Point2 {
                d1: Rational::ZERO,
                d2: p.d2,
            },
        ]);
    }
    let vertices = convex_hull(cands);
    let halfspaces = match vertices.as_slice() {
        [_] => vec![Halfspace::d1_at_most(0), Halfspace::d2_at_most(0)],
        [_, end] => vec![Halfspace::d1_at_most(end.d1), Halfspace::d2_at_most(end.d2)],
        _ => {
            let n = vertices.len();
            let mut hs = Vec::with_capacity(n);
            for i in 0..n {
                let (u, v) = (vertices[i], vertices[(i + 1) % n]);
                let on_d2_axis = u.d1.is_zero() && v.d1.is_zero();
                let on_d1_axis = u.d2.is_zero() && v.d2.is_zero();
                if on_d1_axis || on_d2_axis {
                    continue;
                }
                let e = v.sub(u);
                let (a1, a2) = (e.d2, -e.d1);
                hs.push(Halfspace::new(a1, a2, a1 * u.d1 + a2 * u.d2)?);
            }
            hs
        }
    };
    Ok(Polytope2D {
        halfspaces,
        vertices,
    })
}

impl Polytope2D {
    /// Region cut out of the nonnegative quadrant by downward-closed
    /// halfspaces (nonnegative coefficients and offsets). Redundant
    /// halfspaces are dropped.
    pub fn from_halfspaces(hs: &[Halfspace]) -> Result<Self> {
        if let Some(h) = hs
            .iter()
            .find(|h| h.a1.is_negative() || h.a2.is_negative() || h.b.is_negative())
        {
            return Err(DofError::domain(format!(
                "halfspace {h} is not downward closed"
            )));
        }
        if !hs.iter().any(|h| h.a1.is_positive()) || !hs.iter().any(|h| h.a2.is_positive()) {
            return Err(DofError::domain("region is unbounded"));
        }
        let mut lines: Vec<Halfspace> = hs.to_vec();
        // the axes d1 = 0 and d2 = 0
        lines.push(Halfspace {
            a1: Rational::ONE,
            a2: Rational::ZERO,
            b: Rational::ZERO,
        });
        lines.push(Halfspace {
            a1: Rational::ZERO,
            a2: Rational::ONE,
            b: Rational::ZERO,
        });
        let mut cands = Vec::new();
        for (i, g) in lines.iter().enumerate() {
            for h in &lines[i + 1..] {
                let det = g.a1 * h.a2 - g.a2 * h.a1;
                if det.is_zero() {
                    continue;
                }
                let p = Point2 {
                    d1: (g.b * h.a2 - g.a2 * h.b) / det,
                    d2: (g.a1 * h.b - g.b * h.a1) / det,
                };
                if p.is_nonnegative() && hs.iter().all(|h| h.satisfies(p)) {
                    cands.push(p);
                }
            }
        }
        hull_from_points(&cands)
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Counterclockwise, starting at the origin.
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Exact membership, nonnegativity included.
    pub fn contains(&self, p: Point2) -> bool {
        p.is_nonnegative() && self.halfspaces.iter().all(|h| h.satisfies(p))
    }

    pub fn is_subset(&self, other: &Polytope2D) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }

    /// Set equality (mutual inclusion).
    pub fn set_eq(&self, other: &Polytope2D) -> bool {
        if self.halfspaces == other.halfspaces {
            return true;
        }
        self.is_subset(other) && other.is_subset(self)
    }

    /// Vertices of `self` lying outside `other`.
    pub fn gap_vertices(&self, other: &Polytope2D) -> Vec<Point2> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| !other.contains(v))
            .collect()
    }

    pub fn intersect(&self, other: &Polytope2D) -> Result<Polytope2D> {
        let hs: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .chain(&other.halfspaces)
            .copied()
            .collect();
        Polytope2D::from_halfspaces(&hs)
    }

    /// Mirror image across `d1 = d2`.
    pub fn swap(&self) -> Polytope2D {
        let pts: Vec<Point2> = self.vertices.iter().map(|p| p.swap()).collect();
        hull_from_points(&pts).expect("mirror of a valid region")
    }

    /// Largest `d1` in the region.
    pub fn d1_max(&self) -> Rational {
        self.vertices
            .iter()
            .map(|p| p.d1)
            .max()
            .unwrap_or(Rational::ZERO)
    }

    pub fn d2_max(&self) -> Rational {
        self.vertices
            .iter()
            .map(|p| p.d2)
            .max()
            .unwrap_or(Rational::ZERO)
    }

    pub fn max_sum(&self) -> Rational {
        self.vertices
            .iter()
            .map(|p| p.d1 + p.d2)
            .max()
            .unwrap_or(Rational::ZERO)
    }
}

impl PartialEq for Polytope2D {
    fn eq(&self, other: &Self) -> bool {
        self.set_eq(other)
    }
}

impl Eq for Polytope2D {}

impl fmt::Display for Polytope2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.halfspaces.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}}", hs.join(", "))
    }
}

/// `{d ∈ ℝ^K : d ≥ 0, Σ wᵢ dᵢ ≤ 1}` with every `wᵢ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexRegion {
    weights: Vec<Rational>,
}

impl SimplexRegion {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(DofError::domain("simplex region needs at least one user"));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(DofError::domain(
                "simplex weights must be strictly positive",
            ));
        }
        Ok(SimplexRegion { weights })
    }

    /// Build from per-user single-user maxima, `wᵢ = 1/interceptᵢ`.
    pub fn from_intercepts(intercepts: &[Rational]) -> Result<Self> {
        let w = intercepts
            .iter()
            .map(|c| c.recip())
            .collect::<Result<Vec<_>>>()?;
        SimplexRegion::new(w)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Axis intercepts `1/wᵢ`: the DoF user `i` gets when alone.
    pub fn intercepts(&self) -> Vec<Rational> {
        self.weights
            .iter()
            .map(|w| w.recip().expect("weights are positive"))
            .collect()
    }

    /// Largest total DoF, attained at the intercept of the lightest weight.
    pub fn max_sum(&self) -> Rational {
        let w = self.weights.iter().min().expect("nonempty");
        w.recip().expect("weights are positive")
    }

    pub fn contains(&self, d: &[Rational]) -> Result<bool> {
        if d.len() != self.dim() {
            return Err(DofError::DimensionMismatch {
                expected: self.dim(),
                actual: d.len(),
            });
        }
        if d.iter().any(|x| x.is_negative()) {
            return Ok(false);
        }
        let mut s = Rational::ZERO;
        for (w, x) in self.weights.iter().zip(d) {
            s = s.checked_add(w.checked_mul(*x)?)?;
        }
        Ok(s <= Rational::ONE)
    }

    /// Componentwise weight dominance; for simplices sharing the origin this
    /// is exactly set inclusion.
    pub fn is_subset(&self, other: &SimplexRegion) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(DofError::DimensionMismatch {
                expected: other.dim(),
                actual: self.dim(),
            });
        }
        Ok(self.weights.iter().zip(&other.weights).all(|(a, b)| a >= b))
    }

    pub fn to_polytope(&self) -> Result<Polytope2D> {
        if self.dim() != 2 {
            return Err(DofError::DimensionMismatch {
                expected: 2,
                actual: self.dim(),
            });
        }
        Polytope2D::from_halfspaces(&[Halfspace::new(
            self.weights[0],
            self.weights[1],
            Rational::ONE,
        )?])
    }
}

impl fmt::Display for SimplexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| {
                if *w == Rational::ONE {
                    format!("d{}", i + 1)
                } else {
                    format!("{w}*d{}", i + 1)
                }
            })
            .collect();
        write!(f, "{{{} <= 1}}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn pt(a: i64, b: i64) -> Point2 {
        Point2::new(a, b)
    }

    fn ic_2344_inner() -> Polytope2D {
        hull_from_points(&[pt(2, 1), pt(0, 4), pt(2, 0)]).unwrap()
    }

    fn ic_2344_outer() -> Polytope2D {
        Polytope2D::from_halfspaces(&[
            Halfspace::d1_at_most(2),
            Halfspace::weighted_sum(3, 4).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn unit_simplex_from_axis_points() {
        let p = hull_from_points(&[pt(1, 0), pt(0, 1)]).unwrap();
        assert_eq!(p.halfspaces(), &[Halfspace::sum_at_most(1)]);
        assert_eq!(p.vertices(), &[pt(0, 0), pt(1, 0), pt(0, 1)]);
    }

    #[test]
    fn ic_2344_inner_bound_shape() {
        let p = ic_2344_inner();
        assert_eq!(
            p.halfspaces(),
            &[Halfspace::d1_at_most(2), Halfspace::new(3, 2, 8).unwrap()]
        );
        assert_eq!(p.vertices(), &[pt(0, 0), pt(2, 0), pt(2, 1), pt(0, 4)]);
        assert_eq!(p.halfspaces()[1].to_string(), "3*d1 + 2*d2 <= 8");
    }

    #[test]
    fn degenerate_hulls() {
        let seg = hull_from_points(&[pt(3, 0)]).unwrap();
        assert_eq!(
            seg.halfspaces(),
            &[Halfspace::d1_at_most(3), Halfspace::d2_at_most(0)]
        );
        assert_eq!(seg.vertices(), &[pt(0, 0), pt(3, 0)]);

        let seg2 = hull_from_points(&[pt(0, 2)]).unwrap();
        assert_eq!(
            seg2.halfspaces(),
            &[Halfspace::d1_at_most(0), Halfspace::d2_at_most(2)]
        );
        assert!(seg2.contains(pt(0, 1)) && !seg2.contains(Point2::new(q(1, 100), 0)));

        let origin = hull_from_points(&[pt(0, 0)]).unwrap();
        assert_eq!(origin.vertices(), &[pt(0, 0)]);
        assert!(origin.contains(pt(0, 0)) && !origin.contains(pt(1, 0)));
    }

    #[test]
    fn hull_errors() {
        assert!(matches!(hull_from_points(&[]), Err(DofError::Domain(_))));
        assert!(matches!(
            hull_from_points(&[Point2::new(-1, 0)]),
            Err(DofError::Domain(_))
        ));
    }

    #[test]
    fn halfspace_normalization() {
        let h = Halfspace::new(3, 2, 8).unwrap();
        assert_eq!((h.a1(), h.a2(), h.b()), (Rational::ONE, q(2, 3), q(8, 3)));
        assert_eq!(h, Halfspace::new(6, 4, 16).unwrap());
        assert!(Halfspace::new(0, 0, 1).is_err());
        assert!(Halfspace::new(-1, 1, 1).is_err());
        assert_eq!(Halfspace::new(0, 5, 10).unwrap(), Halfspace::d2_at_most(2));
        assert_eq!(
            Halfspace::weighted_sum(2, 1).unwrap().to_string(),
            "d1 + 2*d2 <= 2"
        );
    }

    #[test]
    fn containment_examples() {
        let inner = ic_2344_inner();
        assert!(!inner.contains(Point2::new(2, q(4, 3))));
        assert!(inner.contains(pt(0, 0)));
        assert!(inner.contains(pt(2, 1)));
        assert!(!inner.contains(pt(-1, 0)));
    }

    #[test]
    fn inclusion_and_gap() {
        let (inner, outer) = (ic_2344_inner(), ic_2344_outer());
        assert_eq!(
            outer.vertices(),
            &[pt(0, 0), pt(2, 0), Point2::new(2, q(4, 3)), pt(0, 4)]
        );
        assert!(inner.is_subset(&inner));
        assert!(inner.is_subset(&outer));
        assert!(!outer.is_subset(&inner));
        assert!(!inner.set_eq(&outer));
        assert_eq!(outer.gap_vertices(&inner), vec![Point2::new(2, q(4, 3))]);
        assert!(inner.gap_vertices(&inner).is_empty());

        let unit = hull_from_points(&[pt(1, 0), pt(0, 1)]).unwrap();
        let half = hull_from_points(&[Point2::new(q(1, 2), 0), Point2::new(0, q(1, 2))]).unwrap();
        assert_eq!(unit.gap_vertices(&half), vec![pt(1, 0), pt(0, 1)]);
    }

    #[test]
    fn equality_across_constructions() {
        let a = hull_from_points(&[pt(1, 0), pt(0, 1)]).unwrap();
        let b = hull_from_points(&[
            Point2::new(q(1, 2), q(1, 2)),
            pt(1, 0),
            Point2::new(q(1, 4), q(1, 4)),
            pt(0, 1),
        ])
        .unwrap();
        let c = Polytope2D::from_halfspaces(&[Halfspace::sum_at_most(1), Halfspace::d1_at_most(5)])
            .unwrap();
        assert!(a.set_eq(&b) && a == c);
        assert_eq!(c.halfspaces().len(), 1);
    }

    #[test]
    fn from_halfspaces_rejects_bad_input() {
        assert!(Polytope2D::from_halfspaces(&[Halfspace::d1_at_most(2)]).is_err());
        assert!(Polytope2D::from_halfspaces(&[Halfspace::sum_at_most(-1)]).is_err());
        assert!(Polytope2D::from_halfspaces(&[
            Halfspace::new(1, -1, 1).unwrap(),
            Halfspace::d2_at_most(1)
        ])
        .is_err());
    }

    #[test]
    fn intersect_and_swap() {
        let outer = ic_2344_outer();
        let csit = Polytope2D::from_halfspaces(&[
            Halfspace::d1_at_most(2),
            Halfspace::d2_at_most(4),
            Halfspace::sum_at_most(4),
        ])
        .unwrap();
        let both = outer.intersect(&csit).unwrap();
        assert!(both.is_subset(&outer) && both.is_subset(&csit));
        assert!(!both.contains(Point2::new(2, 2)));
        let s = ic_2344_inner().swap();
        assert_eq!(s.vertices(), &[pt(0, 0), pt(4, 0), pt(1, 2), pt(0, 2)]);
    }

    #[test]
    fn simplex_regions() {
        let ones = SimplexRegion::new(vec![Rational::ONE; 3]).unwrap();
        let halves = SimplexRegion::new(vec![q(1, 2); 3]).unwrap();
        assert!(ones.is_subset(&ones).unwrap());
        assert!(ones.is_subset(&halves).unwrap());
        assert!(!halves.is_subset(&ones).unwrap());

        let a = SimplexRegion::new(vec![q(1, 2), Rational::ONE]).unwrap();
        let b = SimplexRegion::new(vec![Rational::ONE, q(1, 2)]).unwrap();
        assert!(!a.is_subset(&b).unwrap());
        // the vertex (2,0) of `a` is what breaks inclusion
        assert!(a.contains(&[Rational::integer(2), Rational::ZERO]).unwrap());
        assert!(!b.contains(&[Rational::integer(2), Rational::ZERO]).unwrap());

        assert!(matches!(
            ones.is_subset(&a),
            Err(DofError::DimensionMismatch { .. })
        ));
        assert!(SimplexRegion::new(vec![]).is_err());
        assert!(SimplexRegion::new(vec![Rational::ZERO]).is_err());
        assert_eq!(a.intercepts(), vec![Rational::integer(2), Rational::ONE]);
        assert_eq!(a.max_sum(), Rational::integer(2));
        assert_eq!(a.to_string(), "{1/2*d1 + d2 <= 1}");
    }

    fn small_points() -> impl Strategy<Value = Vec<Point2>> {
        prop::collection::vec((0i64..7, 1i64..4, 0i64..7, 1i64..4), 1..7).prop_map(|v| {
            v.into_iter()
                .map(|(a, b, c, d)| Point2::new(q(a, b), q(c, d)))
                .collect()
        })
    }

    fn check_duality(p: &Polytope2D) {
        for v in p.vertices() {
            let tight = p.halfspaces().iter().filter(|h| h.is_tight(*v)).count();
            let on_axis = v.d1.is_zero() || v.d2.is_zero();
            assert!(tight >= 2 || on_axis, "vertex {v} of {p} is not a corner");
        }
        for h in p.halfspaces() {
            assert!(
                p.vertices().iter().any(|v| h.is_tight(*v)),
                "{h} is not tight in {p}"
            );
        }
    }

    proptest! {
        #[test]
        fn hull_invariants(pts in small_points()) {
            let p = hull_from_points(&pts).unwrap();
            check_duality(&p);
            for &x in &pts {
                prop_assert!(p.contains(x));
            }
            let again = hull_from_points(p.vertices()).unwrap();
            prop_assert_eq!(again.vertices(), p.vertices());
            prop_assert_eq!(again.halfspaces(), p.halfspaces());
            let rebuilt = Polytope2D::from_halfspaces(p.halfspaces());
            if p.d1_max().is_positive() && p.d2_max().is_positive() {
                prop_assert!(rebuilt.unwrap().set_eq(&p));
            }
        }

        #[test]
        fn inclusion_is_a_partial_order(a in small_points(), b in small_points(), c in small_points()) {
            let (pa, pb, pc) = (hull_from_points(&a).unwrap(), hull_from_points(&b).unwrap(), hull_from_points(&c).unwrap());
            prop_assert!(pa.is_subset(&pa));
            if pa.is_subset(&pb) && pb.is_subset(&pa) {
                prop_assert!(pa.set_eq(&pb));
                prop_assert_eq!(pa.vertices(), pb.vertices());
            }
            if pa.is_subset(&pb) && pb.is_subset(&pc) {
                prop_assert!(pa.is_subset(&pc));
            }
            let union: Vec<Point2> = a.iter().chain(&b).copied().collect();
            let pu = hull_from_points(&union).unwrap();
            prop_assert!(pa.is_subset(&pu) && pb.is_subset(&pu));
            prop_assert_eq!(pa.gap_vertices(&pu).len(), 0);
        }
    }
}
