//! A single blow-up at the origin: chart maps, total and strict transforms
//! of 1-forms, scalars, and parametrizations, and dicritical detection.

use crate::algebra::{bipoly_gcd, BiPoly, ParamPoly, Rat};
use crate::error::{Error, Result};
use crate::foliation::OneFormGerm;

/// One of the two affine charts covering the blow-up of the origin.
///
/// `First` is `(x, y) -> (x, x*y)` with exceptional divisor {x = 0};
/// `Second` is `(x, y) -> (x*y, y)` with divisor {y = 0}. The single divisor
/// point missed by the first chart is the origin of the second.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChartKind {
    First,
    Second,
}

impl ChartKind {
    /// Chart substitution applied to a scalar polynomial upstairs -> downstairs.
    pub fn apply(&self, p: &BiPoly) -> BiPoly {
        match self {
            ChartKind::First => p.substitute(&BiPoly::var_x(), &BiPoly::var_x().mul(&BiPoly::var_y())),
            ChartKind::Second => p.substitute(&BiPoly::var_x().mul(&BiPoly::var_y()), &BiPoly::var_y()),
        }
    }

    /// Order of a polynomial in the divisor coordinate of this chart.
    pub fn divisor_order(&self, p: &BiPoly) -> Option<u32> {
        match self {
            ChartKind::First => p.x_order(),
            ChartKind::Second => p.y_order(),
        }
    }

    pub fn div_divisor_pow(&self, p: &BiPoly, k: u32) -> Option<BiPoly> {
        match self {
            ChartKind::First => p.div_x_pow(k),
            ChartKind::Second => p.div_y_pow(k),
        }
    }

    /// Applies the chart map to a parametrized curve.
    pub fn apply_param(&self, gamma: &(ParamPoly, ParamPoly)) -> (ParamPoly, ParamPoly) {
        match self {
            ChartKind::First => (gamma.0.clone(), gamma.0.mul(&gamma.1)),
            ChartKind::Second => (gamma.0.mul(&gamma.1), gamma.1.clone()),
        }
    }
}

/// Result of blowing up a germ at the origin.
#[derive(Clone, Debug)]
pub struct BlowupResult {
    pub dicritical: bool,
    /// Exponent of the divisor coordinate divided out of the total
    /// transform: the multiplicity ν, plus one exactly in the dicritical case.
    pub m: u32,
    /// Strict transform in the first chart (divisor {x = 0}).
    pub chart1: OneFormGerm,
    /// Strict transform in the second chart (divisor {y = 0}).
    pub chart2: OneFormGerm,
}

/// Dicritical test: with `ν` the multiplicity and `P_ν`, `Q_ν` the degree-ν
/// homogeneous parts, the blow-up is dicritical iff `x P_ν + y Q_ν ≡ 0`.
pub fn is_dicritical(germ: &OneFormGerm) -> Result<bool> {
    let nu = germ.algebraic_multiplicity();
    if nu == 0 {
        return Err(Error::RegularGerm);
    }
    Ok(tangent_cone_vanishes(germ, nu))
}

fn tangent_cone_vanishes(germ: &OneFormGerm, nu: u32) -> bool {
    let p_nu = germ.p().homogeneous_part(nu);
    let q_nu = germ.q().homogeneous_part(nu);
    BiPoly::var_x()
        .mul(&p_nu)
        .add(&BiPoly::var_y().mul(&q_nu))
        .is_zero()
}

/// Total transform of `ω = P dx + Q dy` in a chart, with no divisions.
pub fn total_transform(p: &BiPoly, q: &BiPoly, kind: ChartKind) -> (BiPoly, BiPoly) {
    match kind {
        ChartKind::First => {
            // dx -> dx, dy -> y dx + x dy
            let ps = kind.apply(p);
            let qs = kind.apply(q);
            let dx = ps.add(&BiPoly::var_y().mul(&qs));
            let dy = BiPoly::var_x().mul(&qs);
            (dx, dy)
        }
        ChartKind::Second => {
            // dx -> y dx + x dy, dy -> dy
            let ps = kind.apply(p);
            let qs = kind.apply(q);
            let dx = BiPoly::var_y().mul(&ps);
            let dy = BiPoly::var_x().mul(&ps).add(&qs);
            (dx, dy)
        }
    }
}

/// Blows up a germ singular at the origin.
pub fn blowup(germ: &OneFormGerm) -> Result<BlowupResult> {
    if germ.algebraic_multiplicity() == 0 {
        return Err(Error::RegularGerm);
    }
    Ok(blowup_any(germ))
}

/// Blow-up driver variant that also accepts regular centers (needed when the
/// reduction has to separate a dicritical component from a tangency or from
/// another dicritical component). At a regular center `m = 0` and the new
/// component is never dicritical.
pub fn blowup_any(germ: &OneFormGerm) -> BlowupResult {
    let nu = germ.algebraic_multiplicity();
    let mut strict = Vec::with_capacity(2);
    let mut m_seen = None;
    for kind in [ChartKind::First, ChartKind::Second] {
        let (dx, dy) = total_transform(germ.p(), germ.q(), kind);
        let m = match (kind.divisor_order(&dx), kind.divisor_order(&dy)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("total transform of a nonzero form is nonzero"),
        };
        let sp = kind.div_divisor_pow(&dx, m).unwrap();
        let sq = kind.div_divisor_pow(&dy, m).unwrap();
        // off the divisor the blow-up is an isomorphism, so the only common
        // factor of the total transform is a power of the divisor coordinate
        let g = bipoly_gcd(&sp, &sq);
        assert!(
            g.is_constant(),
            "strict transform retained a common factor: {g}"
        );
        if let Some(prev) = m_seen {
            assert_eq!(prev, m, "chart-dependent division exponent");
        }
        m_seen = Some(m);
        strict.push(OneFormGerm::from_coprime(sp, sq));
    }
    let m = m_seen.unwrap();
    let dicritical = m == nu + 1;
    assert!(
        m == nu || dicritical,
        "division exponent {m} outside {{ν, ν+1}} for ν = {nu}"
    );
    if nu > 0 {
        assert_eq!(
            dicritical,
            tangent_cone_vanishes(germ, nu),
            "dicritical test disagrees with the division exponent"
        );
    }
    let chart2 = strict.pop().unwrap();
    let chart1 = strict.pop().unwrap();
    BlowupResult { dicritical, m, chart1, chart2 }
}

/// Pullback of a scalar function through one chart of the blow-up.
pub fn pullback_scalar(f: &BiPoly, kind: ChartKind) -> BiPoly {
    kind.apply(f)
}

/// Strict transform of a scalar: pullback divided by the divisor coordinate
/// to the power of the order of `f` at the origin.
pub fn strict_transform_scalar(f: &BiPoly, kind: ChartKind) -> Result<BiPoly> {
    let ord = f.order_at_origin()?;
    let pulled = kind.apply(f);
    Ok(kind
        .div_divisor_pow(&pulled, ord)
        .expect("pullback divisible by divisor^ord"))
}

/// Blow-down of a parametrized curve through one chart: apply the chart map,
/// then translate by the blow-up center in the parent chart.
pub fn pushdown_param(
    gamma: &(ParamPoly, ParamPoly),
    kind: ChartKind,
    center: (&Rat, &Rat),
) -> (ParamPoly, ParamPoly) {
    let (u, v) = kind.apply_param(gamma);
    (u.add_constant(center.0), v.add_constant(center.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn xp(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, rat(c))
    }

    fn radial() -> OneFormGerm {
        OneFormGerm::new(xp(0, 1, -1), xp(1, 0, 1)).unwrap()
    }

    fn cusp_differential() -> OneFormGerm {
        // d(y^2 - x^3) = -3x^2 dx + 2y dy
        OneFormGerm::new(xp(2, 0, -3), xp(0, 1, 2)).unwrap()
    }

    #[test]
    fn dicritical_examples() {
        assert!(is_dicritical(&radial()).unwrap());
        let g = OneFormGerm::new(xp(0, 1, 1), xp(1, 0, 1)).unwrap();
        assert!(!is_dicritical(&g).unwrap());
        let regular = OneFormGerm::new(BiPoly::zero(), BiPoly::one()).unwrap();
        assert!(is_dicritical(&regular).is_err());
    }

    #[test]
    fn dicritical_family_first_blowup() {
        // ω_3 with λ = 1
        let p = xp(4, 1, 2).add(&xp(2, 2, 4)).add(&xp(0, 3, -1));
        let q = xp(1, 2, 1).add(&xp(3, 1, -2)).add(&xp(5, 0, -1));
        let g = OneFormGerm::new(p, q).unwrap();
        assert!(is_dicritical(&g).unwrap());
    }

    #[test]
    fn blowup_radial() {
        let r = blowup(&radial()).unwrap();
        assert!(r.dicritical);
        assert_eq!(r.m, 2);
        // chart-1 total transform is x^2 dy, strict transform dy
        assert!(r.chart1.p().is_zero());
        assert_eq!(r.chart1.q(), &BiPoly::one());
    }

    #[test]
    fn blowup_cusp() {
        let r = blowup(&cusp_differential()).unwrap();
        assert!(!r.dicritical);
        assert_eq!(r.m, 1);
        let expected_p = xp(0, 2, 2).add(&xp(1, 0, -3));
        let expected_q = xp(1, 1, 2);
        assert_eq!(r.chart1.p(), &expected_p);
        assert_eq!(r.chart1.q(), &expected_q);
    }

    #[test]
    fn blowup_saddle_node() {
        // x^2 dy - y dx
        let g = OneFormGerm::new(xp(0, 1, -1), xp(2, 0, 1)).unwrap();
        let r = blowup(&g).unwrap();
        assert!(!r.dicritical);
        assert_eq!(r.m, 1);
    }

    #[test]
    fn scalar_pullbacks() {
        let xy = xp(1, 1, 1);
        assert_eq!(pullback_scalar(&xy, ChartKind::First), xp(2, 1, 1));
        assert_eq!(strict_transform_scalar(&xy, ChartKind::First).unwrap(), BiPoly::var_y());
        let cusp = xp(0, 2, 1).sub(&xp(3, 0, 1));
        assert_eq!(
            strict_transform_scalar(&cusp, ChartKind::First).unwrap(),
            xp(0, 2, 1).sub(&xp(1, 0, 1))
        );
        assert_eq!(strict_transform_scalar(&BiPoly::var_x(), ChartKind::First).unwrap(), BiPoly::one());
    }

    #[test]
    fn pushdown_examples() {
        let t = ParamPoly::var();
        let g = (t.clone(), ParamPoly::one());
        let down = pushdown_param(&g, ChartKind::First, (&rat(0), &rat(0)));
        assert_eq!(down, (t.clone(), t.clone()));
        let g0 = (t.clone(), ParamPoly::zero());
        let down0 = pushdown_param(&g0, ChartKind::First, (&rat(0), &rat(0)));
        assert_eq!(down0, (t.clone(), ParamPoly::zero()));
    }

    #[test]
    fn pullback_multiplicative() {
        let f = xp(1, 1, 2).add(&BiPoly::one());
        let g = xp(0, 2, 1).sub(&xp(3, 0, 1));
        assert_eq!(
            pullback_scalar(&f.mul(&g), ChartKind::Second),
            pullback_scalar(&f, ChartKind::Second).mul(&pullback_scalar(&g, ChartKind::Second))
        );
    }
}
