//! Homogeneous 1-forms on the projective plane: validation, per-chart
//! affine germs, best-effort rational singular locus, and the degree audit
//! summing squared component valuations against (d - 1)^2.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::algebra::{bipoly_gcd, resultant_y, AffineChart, BiPoly, ParamPoly, Rat, TriPoly, UniPoly};
use crate::error::{Error, Result};
use crate::foliation::OneFormGerm;
use crate::resolution::reduce;
use crate::valuation::{verify, ValuationReport};

/// Statement echoed in every audit: the degree bound presupposes that the
/// foliation carries no special invariant curves, and that assumption is the
/// caller's, not checked here.
pub const AUDIT_DISCLAIMER: &str = "degree bound assumes the foliation is free of special invariant curves; this hypothesis is asserted by the caller and is not machine-verified";

/// A validated homogeneous 1-form `A dx + B dy + C dz` of degree `d`.
#[derive(Clone, Debug)]
pub struct ProjForm {
    a: TriPoly,
    b: TriPoly,
    c: TriPoly,
    degree: u32,
}

impl ProjForm {
    /// Checks homogeneity, the common degree, the Euler contraction, the
    /// integrability of the form, and coprimality of the coefficients.
    pub fn validate(a: TriPoly, b: TriPoly, c: TriPoly) -> Result<Self> {
        let mut deg = None;
        for (name, p) in [("A", &a), ("B", &b), ("C", &c)] {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or_else(|| Error::Validation(format!("coefficient {name} is not homogeneous")))?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Validation(format!(
                        "coefficient {name} has degree {d}, expected {e}"
                    )))
                }
                _ => {}
            }
        }
        let Some(deg) = deg else {
            return Err(Error::Validation("form is identically zero".into()));
        };
        if deg == 0 {
            return Err(Error::Validation("coefficients must have positive degree".into()));
        }
        let euler = a
            .mul(&TriPoly::var(0))
            .add(&b.mul(&TriPoly::var(1)))
            .add(&c.mul(&TriPoly::var(2)));
        if !euler.is_zero() {
            return Err(Error::Validation(format!("Euler contraction is {euler}, not 0")));
        }
        // integrability: A (B_z - C_y) + B (C_x - A_z) + C (A_y - B_x) = 0
        let curl = a
            .mul(&b.partial(2).add(&c.partial(1).neg()))
            .add(&b.mul(&c.partial(0).add(&a.partial(2).neg())))
            .add(&c.mul(&a.partial(1).add(&b.partial(0).neg())));
        if !curl.is_zero() {
            return Err(Error::Validation("form is not integrable".into()));
        }
        for (idx, name) in [(0, "x"), (1, "y"), (2, "z")] {
            if a.divisible_by_var(idx) && b.divisible_by_var(idx) && c.divisible_by_var(idx) {
                return Err(Error::Validation(format!("coefficients share the factor {name}")));
            }
        }
        let dehoms: Vec<BiPoly> = [&a, &b, &c]
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.dehomogenize(AffineChart::Z1))
            .collect();
        let mut g = dehoms[0].clone();
        for p in &dehoms[1..] {
            g = bipoly_gcd(&g, p);
        }
        if !g.is_constant() {
            return Err(Error::Validation(format!("coefficients share the factor {g}")));
        }
        Ok(Self { a, b, c, degree: deg - 1 })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> (&TriPoly, &TriPoly, &TriPoly) {
        (&self.a, &self.b, &self.c)
    }

    /// The two dropped-differential coefficients of the restriction of the
    /// form to an affine chart, in chart coordinates.
    fn chart_pair(&self, chart: AffineChart) -> (BiPoly, BiPoly) {
        match chart {
            AffineChart::Z1 => (self.a.dehomogenize(chart), self.b.dehomogenize(chart)),
            AffineChart::Y1 => (self.a.dehomogenize(chart), self.c.dehomogenize(chart)),
            AffineChart::X1 => (self.b.dehomogenize(chart), self.c.dehomogenize(chart)),
        }
    }

    /// Local 1-form germ at a projective point in the given chart.
    pub fn affine_germ(&self, point: &[Rat; 3], chart: AffineChart) -> Result<OneFormGerm> {
        let (u, v) = chart_coords(point, chart)
            .ok_or_else(|| Error::Validation("point lies outside the chart".into()))?;
        let (p, q) = self.chart_pair(chart);
        OneFormGerm::new(p.translate(&u, &v), q.translate(&u, &v))
    }

    /// Rational points where all three coefficients vanish, with a flag that
    /// is false when an irrational factor survived the elimination (the list
    /// may then be incomplete).
    pub fn find_rational_singularities(&self) -> (Vec<[Rat; 3]>, bool) {
        let mut found: BTreeSet<[Rat; 3]> = BTreeSet::new();
        let mut complete = true;
        for chart in [AffineChart::Z1, AffineChart::Y1, AffineChart::X1] {
            let polys: Vec<BiPoly> = [&self.a, &self.b, &self.c]
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| p.dehomogenize(chart))
                .collect();
            let (zeros, chart_complete) = common_zeros(&polys);
            complete &= chart_complete;
            for (u, v) in zeros {
                let p = match chart {
                    AffineChart::Z1 => [u, v, Rat::one()],
                    AffineChart::Y1 => [u, Rat::one(), v],
                    AffineChart::X1 => [Rat::one(), u, v],
                };
                found.insert(normalize_point(p));
            }
        }
        (found.into_iter().collect(), complete)
    }
}

fn chart_coords(point: &[Rat; 3], chart: AffineChart) -> Option<(Rat, Rat)> {
    let (num0, num1, den) = match chart {
        AffineChart::Z1 => (&point[0], &point[1], &point[2]),
        AffineChart::Y1 => (&point[0], &point[2], &point[1]),
        AffineChart::X1 => (&point[1], &point[2], &point[0]),
    };
    if den.is_zero() {
        return None;
    }
    Some((num0 / den, num1 / den))
}

/// First affine chart containing the point, preferring z = 1.
pub fn preferred_chart(point: &[Rat; 3]) -> Option<AffineChart> {
    if !point[2].is_zero() {
        Some(AffineChart::Z1)
    } else if !point[1].is_zero() {
        Some(AffineChart::Y1)
    } else if !point[0].is_zero() {
        Some(AffineChart::X1)
    } else {
        None
    }
}

fn normalize_point(p: [Rat; 3]) -> [Rat; 3] {
    let pivot = p.iter().find(|c| !c.is_zero()).cloned().unwrap();
    [&p[0] / &pivot, &p[1] / &pivot, &p[2] / &pivot]
}

/// Best-effort common rational zeros of a finite set of plane curves with
/// coprime overall gcd. The flag is false when rational-root extraction hit
/// an irreducible factor, i.e. when irrational zeros may exist.
fn common_zeros(polys: &[BiPoly]) -> (Vec<(Rat, Rat)>, bool) {
    let mut complete = true;
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    let mut found_resultant = false;
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let r = resultant_y(&polys[i], &polys[j]);
            if r.is_zero() {
                continue;
            }
            found_resultant = true;
            let (roots, leftover) = r.rational_roots();
            if leftover.is_some() {
                complete = false;
            }
            xs.extend(roots);
        }
    }
    if !found_resultant {
        // every pair shares a curve even though the whole set does not;
        // elimination by resultants cannot enumerate the finite zeros
        return (Vec::new(), false);
    }
    let mut out = Vec::new();
    for x0 in xs {
        let gamma = (ParamPoly::constant(x0.clone()), ParamPoly::var());
        let mut g = UniPoly::zero();
        for p in polys {
            g = g.gcd(&p.eval_on_param(&gamma));
            if g.is_zero() {
                continue;
            }
        }
        debug_assert!(!g.is_zero(), "common vertical line despite coprime set");
        if g.degree() == Some(0) {
            continue;
        }
        let (roots, leftover) = g.rational_roots();
        if leftover.is_some() {
            complete = false;
        }
        for y0 in roots {
            out.push((x0.clone(), y0));
        }
    }
    (out, complete)
}

/// Resolution and identity checks for one singular point of the form.
#[derive(Clone, Debug)]
pub struct PointAudit {
    pub point: [Rat; 3],
    pub chart: AffineChart,
    pub report: Option<ValuationReport>,
    pub error: Option<String>,
    /// Sum over components of (nu_D(F) - 1)^2.
    pub sum_nu: i64,
    /// The same sum written through the main identity:
    /// (nu_D(Psi) + xi_D - 2 + epsilon)^2 per component.
    pub sum_psi: i64,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub degree: u32,
    pub points: Vec<PointAudit>,
    pub lhs_direct: i64,
    pub lhs_substituted: i64,
    pub rhs: i64,
    pub cross_check_ok: bool,
    pub inequality_ok: bool,
    /// `Some(flag)` when the point list came from the built-in finder.
    pub complete: Option<bool>,
    pub disclaimer: &'static str,
}

/// Audits the supplied singular points. `complete` is what the caller knows
/// about the list (None for user-supplied lists).
pub fn audit(
    form: &ProjForm,
    points: &[[Rat; 3]],
    max_depth: u32,
    complete: Option<bool>,
) -> AuditReport {
    let mut out = AuditReport {
        degree: form.degree(),
        points: Vec::new(),
        lhs_direct: 0,
        lhs_substituted: 0,
        rhs: (form.degree() as i64 - 1).pow(2),
        cross_check_ok: true,
        inequality_ok: true,
        complete,
        disclaimer: AUDIT_DISCLAIMER,
    };
    for point in points {
        let point = normalize_point(point.clone());
        let Some(chart) = preferred_chart(&point) else {
            continue;
        };
        let audit_point = match form
            .affine_germ(&point, chart)
            .and_then(|g| reduce(&g, max_depth))
        {
            Ok(tree) => {
                let report = verify(&tree);
                let sum_nu: i64 = report
                    .components
                    .iter()
                    .map(|c| (c.nu_f as i64 - 1).pow(2))
                    .sum();
                let sum_psi: i64 = report
                    .components
                    .iter()
                    .map(|c| (c.nu_psi + c.xi as i64 - 2 + c.epsilon).pow(2))
                    .sum();
                PointAudit {
                    point,
                    chart,
                    report: Some(report),
                    error: None,
                    sum_nu,
                    sum_psi,
                }
            }
            Err(e) => PointAudit {
                point,
                chart,
                report: None,
                error: Some(e.to_string()),
                sum_nu: 0,
                sum_psi: 0,
            },
        };
        out.lhs_direct += audit_point.sum_nu;
        out.lhs_substituted += audit_point.sum_psi;
        out.cross_check_ok &= audit_point.sum_nu == audit_point.sum_psi;
        out.points.push(audit_point);
    }
    out.inequality_ok = out.lhs_direct <= out.rhs;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn t(i: u32, j: u32, k: u32, c: i64) -> TriPoly {
        TriPoly::monomial(i, j, k, rat(c))
    }

    fn degree_one_form() -> ProjForm {
        // A = yz, B = xz, C = -2xy
        ProjForm::validate(t(0, 1, 1, 1), t(1, 0, 1, 1), t(1, 1, 0, -2)).unwrap()
    }

    #[test]
    fn validation() {
        let f = ProjForm::validate(t(0, 1, 0, 1), t(1, 0, 0, -1), TriPoly::zero()).unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(degree_one_form().degree(), 1);
        // Euler failure
        assert!(matches!(
            ProjForm::validate(t(0, 1, 0, 1), t(1, 0, 0, 1), TriPoly::zero()),
            Err(Error::Validation(_))
        ));
        // common factor z
        assert!(matches!(
            ProjForm::validate(t(0, 1, 2, 1), t(1, 0, 2, -1), TriPoly::zero()),
            Err(Error::Validation(_))
        ));
        // mixed degrees
        assert!(matches!(
            ProjForm::validate(t(0, 1, 1, 1), t(1, 0, 0, -1), TriPoly::zero()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn affine_germs() {
        let lin = ProjForm::validate(t(0, 1, 0, 1), t(1, 0, 0, -1), TriPoly::zero()).unwrap();
        let origin = [rat(0), rat(0), rat(1)];
        let g = lin.affine_germ(&origin, AffineChart::Z1).unwrap();
        assert_eq!(g.p(), &BiPoly::var_y());
        assert_eq!(g.q(), &BiPoly::var_x().neg());
        // translated point: the germ is regular there
        let moved = [rat(1), rat(0), rat(1)];
        let gm = lin.affine_germ(&moved, AffineChart::Z1).unwrap();
        assert_eq!(gm.algebraic_multiplicity(), 0);
        let f = degree_one_form();
        let gz = f.affine_germ(&origin, AffineChart::Z1).unwrap();
        assert_eq!(gz.p(), &BiPoly::var_y());
        assert_eq!(gz.q(), &BiPoly::var_x());
        assert!(f.affine_germ(&[rat(1), rat(0), rat(0)], AffineChart::Z1).is_err());
    }

    #[test]
    fn singular_locus_of_degree_one_form() {
        let f = degree_one_form();
        let (pts, complete) = f.find_rational_singularities();
        assert!(complete);
        let expected: Vec<[Rat; 3]> = vec![
            [rat(0), rat(0), rat(1)],
            [rat(0), rat(1), rat(0)],
            [rat(1), rat(0), rat(0)],
        ];
        assert_eq!(pts.len(), 3);
        for e in expected {
            assert!(pts.contains(&e), "missing {e:?}");
        }
    }

    fn jordan_form() -> ProjForm {
        // projectivization of (x+y) dx - x dy
        let a = t(1, 0, 1, 1).add(&t(0, 1, 1, 1));
        ProjForm::validate(a, t(1, 0, 1, -1), t(2, 0, 0, -1)).unwrap()
    }

    #[test]
    fn degree_one_audit() {
        let f = jordan_form();
        assert_eq!(f.degree(), 1);
        let (pts, complete) = f.find_rational_singularities();
        assert!(complete);
        assert_eq!(pts.len(), 2);
        let report = audit(&f, &pts, 64, Some(complete));
        assert_eq!(report.rhs, 0);
        assert!(report.cross_check_ok);
        assert!(report.inequality_ok);
        assert_eq!(report.lhs_direct, 0);
        assert!(report.points.iter().all(|p| p.error.is_none()));
    }

    #[test]
    fn monomial_integral_form_is_flagged() {
        // xy/z^2 is a first integral, so the degree bound hypothesis fails;
        // the audit must flag the violated inequality while every per-point
        // cross-check still holds
        let f = degree_one_form();
        let (pts, complete) = f.find_rational_singularities();
        assert!(complete);
        let report = audit(&f, &pts, 64, Some(complete));
        assert!(report.cross_check_ok);
        assert!(!report.inequality_ok);
        assert!(report.lhs_direct > report.rhs);
    }
}
