//! Foliation germs: algebraic multiplicity, classification of singularities
//! into reduced types, and the weak index along coordinate branches.

use num::{One, Zero};

use crate::algebra::{bipoly_gcd, is_rational_square, rat, BiPoly, Rat};
use crate::error::{Error, Result};

/// A coordinate branch through the origin.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Axis {
    /// The branch {x = 0}.
    XZero,
    /// The branch {y = 0}.
    YZero,
}

impl Axis {
    /// Projective tangent direction of the branch.
    pub fn direction(self) -> Direction {
        match self {
            Axis::XZero => Direction::new(Rat::zero(), Rat::one()),
            Axis::YZero => Direction::new(Rat::one(), Rat::zero()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::XZero => "x",
            Axis::YZero => "y",
        }
    }
}

/// A projective tangent direction (a : b), canonically scaled so the first
/// nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Direction {
    pub a: Rat,
    pub b: Rat,
}

impl Direction {
    pub fn new(a: Rat, b: Rat) -> Self {
        assert!(!(a.is_zero() && b.is_zero()), "zero direction");
        if !a.is_zero() {
            let b = b / &a;
            Self { a: Rat::one(), b }
        } else {
            Self { a, b: Rat::one() }
        }
    }
}

/// Linear part of the dual vector field `v = -Q ∂x + P ∂y` at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearPart {
    /// Row-major 2x2 Jacobian of `(-Q, P)`.
    pub matrix: [[Rat; 2]; 2],
    pub trace: Rat,
    pub det: Rat,
}

impl LinearPart {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Rat::is_zero)
    }

    /// Eigendirection for the eigenvalue `lambda`, when the matrix minus
    /// `lambda` times the identity is singular and nonzero.
    fn eigendirection(&self, lambda: &Rat) -> Option<Direction> {
        let a = &self.matrix[0][0] - lambda;
        let b = self.matrix[0][1].clone();
        let c = self.matrix[1][0].clone();
        let d = &self.matrix[1][1] - lambda;
        if !a.is_zero() || !b.is_zero() {
            Some(Direction::new(b, -a))
        } else if !c.is_zero() || !d.is_zero() {
            Some(Direction::new(d, -c))
        } else {
            None
        }
    }
}

/// The classification of a germ at the origin into the reduced types.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SingularityClass {
    Regular,
    /// Nonzero eigenvalues with ratio outside the positive rationals.
    NonDegenerateReduced,
    /// Exactly one zero eigenvalue.
    SaddleNode {
        weak_direction: Direction,
        strong_direction: Direction,
        /// Tangency index along the weak separatrix; filled lazily, and only
        /// when the weak separatrix is a coordinate branch.
        weak_index: Option<u32>,
    },
    NonReduced,
}

impl SingularityClass {
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            SingularityClass::NonDegenerateReduced | SingularityClass::SaddleNode { .. }
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            SingularityClass::Regular => "regular",
            SingularityClass::NonDegenerateReduced => "non-degenerate",
            SingularityClass::SaddleNode { .. } => "saddle-node",
            SingularityClass::NonReduced => "non-reduced",
        }
    }
}

/// A 1-form germ `ω = P dx + Q dy` at the origin of its chart, with `P` and
/// `Q` coprime and not both zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneFormGerm {
    p: BiPoly,
    q: BiPoly,
}

impl OneFormGerm {
    /// Builds a germ, dividing out any common factor of the coefficients.
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::Validation("both 1-form coefficients are zero".into()));
        }
        let g = bipoly_gcd(&p, &q);
        if g.is_constant() {
            return Ok(Self { p, q });
        }
        let p = p.exact_div(&g).expect("gcd divides");
        let q = q.exact_div(&g).expect("gcd divides");
        Ok(Self { p, q })
    }

    /// Coefficients already known to be coprime (asserted in debug builds).
    pub fn from_coprime(p: BiPoly, q: BiPoly) -> Self {
        debug_assert!(bipoly_gcd(&p, &q).is_constant());
        Self { p, q }
    }

    pub fn p(&self) -> &BiPoly {
        &self.p
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    /// min(ν(P), ν(Q)); zero exactly at regular points.
    pub fn algebraic_multiplicity(&self) -> u32 {
        let po = self.p.order();
        let qo = self.q.order();
        match (po, qo) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("germ invariant: not both zero"),
        }
    }

    /// Jacobian data of the dual vector field `(-Q, P)` at the origin.
    pub fn linear_part(&self) -> LinearPart {
        let m = [
            [-self.q.coeff(1, 0), -self.q.coeff(0, 1)],
            [self.p.coeff(1, 0), self.p.coeff(0, 1)],
        ];
        let trace = &m[0][0] + &m[1][1];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        LinearPart { matrix: m, trace, det }
    }

    /// Classification into regular / non-degenerate / saddle-node /
    /// non-reduced.
    ///
    /// With nonzero determinant the eigenvalue ratio lies in the positive
    /// rationals iff `s = τ²/δ` satisfies `s >= 4` and `s(s-4)` is a rational
    /// square (from `λ1/λ2 + λ2/λ1 = s - 2`), which decides the reduced case
    /// without leaving exact arithmetic.
    pub fn classify(&self) -> SingularityClass {
        if self.algebraic_multiplicity() == 0 {
            return SingularityClass::Regular;
        }
        let lin = self.linear_part();
        if lin.is_zero() {
            return SingularityClass::NonReduced;
        }
        if !lin.det.is_zero() {
            let s = &lin.trace * &lin.trace / &lin.det;
            let ratio_positive_rational =
                s >= rat(4) && is_rational_square(&(&s * (&s - rat(4))));
            return if ratio_positive_rational {
                SingularityClass::NonReduced
            } else {
                SingularityClass::NonDegenerateReduced
            };
        }
        if lin.trace.is_zero() {
            // nonzero nilpotent linear part
            return SingularityClass::NonReduced;
        }
        let weak = lin.eigendirection(&Rat::zero()).expect("nonzero matrix");
        let strong = lin.eigendirection(&lin.trace).expect("distinct eigenvalues");
        // when the weak separatrix direction is a coordinate axis and that
        // axis is invariant, the tangency order is already readable here
        let weak_index = [Axis::XZero, Axis::YZero]
            .into_iter()
            .find(|a| weak == a.direction() && self.is_axis_invariant(*a))
            .and_then(|a| self.weak_index_along(a).ok());
        SingularityClass::SaddleNode {
            weak_direction: weak,
            strong_direction: strong,
            weak_index,
        }
    }

    /// True iff the coordinate branch is invariant:
    /// {x = 0} is invariant iff x | Q, and {y = 0} iff y | P.
    pub fn is_axis_invariant(&self, axis: Axis) -> bool {
        match axis {
            Axis::XZero => self.q.x_order().map_or(true, |o| o >= 1),
            Axis::YZero => self.p.y_order().map_or(true, |o| o >= 1),
        }
    }

    /// Tangency order of the germ along an invariant coordinate branch:
    /// `ord_t Q(t, 0)` for {y = 0} and `ord_t P(0, t)` for {x = 0}.
    pub fn weak_index_along(&self, axis: Axis) -> Result<u32> {
        if !self.is_axis_invariant(axis) {
            return Err(Error::NotInvariant(axis.name()));
        }
        let restricted = match axis {
            Axis::YZero => self.q.restrict_y0(),
            Axis::XZero => self.p.restrict_x0(),
        };
        let ord = restricted.ord().ok_or(Error::ZeroPolynomial)?;
        Ok(ord as u32)
    }

    /// Re-centers the germ at `point`, substituting `(x + a, y + b)`.
    pub fn translate(&self, point: (&Rat, &Rat)) -> Self {
        // translation preserves coprimality
        Self {
            p: self.p.translate(point.0, point.1),
            q: self.q.translate(point.0, point.1),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        assert!(!c.is_zero());
        Self {
            p: self.p.scale(c),
            q: self.q.scale(c),
        }
    }

    /// Exchanges the roles of x and y (and hence of P and Q).
    pub fn swap_xy(&self) -> Self {
        Self {
            p: self.q.swap_xy(),
            q: self.p.swap_xy(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xp(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, rat(c))
    }

    /// ω = x^{k+1} dy - y(1 + λ x^k) dx
    fn saddle_node_form(k: u32, lambda: i64) -> OneFormGerm {
        let p = xp(0, 1, -1).add(&xp(k, 1, -lambda));
        let q = xp(k + 1, 0, 1);
        OneFormGerm::new(p, q).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let radial = OneFormGerm::new(xp(0, 1, -1), xp(1, 0, 1)).unwrap();
        assert_eq!(radial.algebraic_multiplicity(), 1);
        let regular = OneFormGerm::new(BiPoly::zero(), BiPoly::one()).unwrap();
        assert_eq!(regular.algebraic_multiplicity(), 0);
        assert!(matches!(regular.classify(), SingularityClass::Regular));
    }

    #[test]
    fn classify_nondegenerate() {
        // x dy + y dx: eigenvalues -1, 1
        let g = OneFormGerm::new(xp(0, 1, 1), xp(1, 0, 1)).unwrap();
        assert!(matches!(g.classify(), SingularityClass::NonDegenerateReduced));
    }

    #[test]
    fn classify_positive_rational_ratio_is_non_reduced() {
        // 2x dy - y dx: dual field eigenvalues -2, -1, ratio 2 in Q+
        let g = OneFormGerm::new(xp(0, 1, -1), xp(1, 0, 2)).unwrap();
        assert!(matches!(g.classify(), SingularityClass::NonReduced));
    }

    #[test]
    fn classify_saddle_node_weak_direction() {
        // x^2 dy - y dx: saddle-node with weak separatrix {y = 0}
        let g = saddle_node_form(1, 0);
        match g.classify() {
            SingularityClass::SaddleNode { weak_direction, .. } => {
                assert_eq!(weak_direction, Axis::YZero.direction());
            }
            other => panic!("expected saddle-node, got {other:?}"),
        }
    }

    #[test]
    fn weak_index_of_normal_form_family() {
        for k in 1..=8 {
            let g = saddle_node_form(k, 1);
            assert_eq!(g.weak_index_along(Axis::YZero).unwrap(), k + 1);
            // swapped form y^{k+1} dx - x(1 + λ y^k) dy along {x = 0}
            let swapped = g.swap_xy();
            assert_eq!(swapped.weak_index_along(Axis::XZero).unwrap(), k + 1);
        }
    }

    #[test]
    fn weak_index_instance_k2() {
        let g = saddle_node_form(2, 1);
        assert_eq!(g.weak_index_along(Axis::YZero).unwrap(), 3);
    }

    #[test]
    fn weak_index_requires_invariance() {
        let g = OneFormGerm::new(BiPoly::one(), xp(1, 0, 1)).unwrap();
        assert!(g.weak_index_along(Axis::YZero).is_err());
    }

    #[test]
    fn classify_invariant_under_unit_scaling() {
        let g = saddle_node_form(2, 1);
        assert_eq!(g.classify(), g.scale(&rat(-7)).classify());
    }

    #[test]
    fn multiplicity_two_is_non_reduced() {
        let g = OneFormGerm::new(xp(2, 0, 1), xp(0, 2, 1)).unwrap();
        assert!(g.algebraic_multiplicity() >= 2);
        assert!(matches!(g.classify(), SingularityClass::NonReduced));
    }

    #[test]
    fn translate_examples() {
        let g = OneFormGerm::new(xp(0, 1, -1), xp(1, 0, 1)).unwrap();
        let t = g.translate((&rat(1), &rat(0)));
        assert_eq!(t.q(), &xp(1, 0, 1).add(&BiPoly::one()));
        assert_eq!(t.p(), &xp(0, 1, -1));
        let id = g.translate((&rat(0), &rat(0)));
        assert_eq!(&id, &g);
        let h = OneFormGerm::new(xp(0, 1, 1).sub(&BiPoly::one()), xp(1, 0, 1)).unwrap();
        let ht = h.translate((&rat(0), &rat(1)));
        assert_eq!(ht.p(), &xp(0, 1, 1));
        assert_eq!(ht.q(), &xp(1, 0, 1));
    }
}
