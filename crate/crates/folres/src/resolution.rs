//! Reduction of singularities by iterated blow-ups, with full divisor
//! bookkeeping: infinitely near points, components with multiplicity and
//! valence, corner structure, and per-point strict-transform germs.
//!
//! Beyond blowing up non-reduced singular points, the driver also removes
//! everything the definition of a reduction forbids on dicritical
//! components: singular points lying on them, tangencies of the strict
//! transform with them, and corners between two dicritical components.

use std::collections::BTreeSet;

use num::Zero;

use crate::algebra::{Rat, UniPoly};
use crate::blowup::{blowup_any, total_transform, ChartKind};
use crate::error::{Error, Result};
use crate::foliation::{Axis, OneFormGerm, SingularityClass};

pub type PointId = usize;
pub type CompId = usize;
pub type ChartId = usize;

/// Processing order for pending blow-up centers. The resulting invariants
/// (ν_D, ξ_D, ρ, Val) are order-independent; the id labeling is not.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BlowupOrder {
    #[default]
    LowestIdFirst,
    HighestIdFirst,
}

/// One affine chart of the blown-up surface.
#[derive(Clone, Debug)]
pub struct ChartData {
    pub id: ChartId,
    /// Parent chart and the data of the blow-up that created this chart;
    /// all `None`/unused for the root chart.
    pub parent: Option<ChartId>,
    pub kind: Option<ChartKind>,
    /// Blow-up center in parent chart coordinates.
    pub center: (Rat, Rat),
    pub birth_comp: Option<CompId>,
    pub blown_point: Option<PointId>,
}

impl ChartData {
    /// Divisor coordinate of this chart as a local axis.
    pub fn divisor_axis(&self) -> Option<Axis> {
        match self.kind? {
            ChartKind::First => Some(Axis::XZero),
            ChartKind::Second => Some(Axis::YZero),
        }
    }
}

/// An infinitely near point: a singular (or forced) point on some stage of
/// the blow-up cascade, with its centered germ.
#[derive(Clone, Debug)]
pub struct InfNearPoint {
    pub id: PointId,
    pub stage: u32,
    pub chart: ChartId,
    pub coords: (Rat, Rat),
    /// V(q): the components through this point with their local axis
    /// equation after centering (at most two).
    pub on_components: Vec<(CompId, Axis)>,
    /// Germ centered at the point.
    pub germ: OneFormGerm,
    pub class: SingularityClass,
    pub blown_up: bool,
    pub must_blow_up: bool,
    /// The point whose blow-up created the divisor this point lies on.
    pub origin_blowup: Option<PointId>,
}

/// An irreducible component of the exceptional divisor.
#[derive(Clone, Debug)]
pub struct Component {
    pub id: CompId,
    pub birth_point: PointId,
    pub dicritical: bool,
    /// Multiplicity ρ(D): base multiplicity of a curvetta attached at a
    /// free point of D.
    pub rho: u64,
    /// The two charts created by the blow-up that produced this component.
    pub charts: (ChartId, ChartId),
    /// Every point ever recorded on this component (blown up or final).
    pub points: Vec<PointId>,
}

impl Component {
    pub fn epsilon(&self) -> i64 {
        if self.dicritical {
            1
        } else {
            0
        }
    }
}

/// The full blow-up history of one germ.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub root_germ: OneFormGerm,
    pub charts: Vec<ChartData>,
    pub points: Vec<InfNearPoint>,
    pub components: Vec<Component>,
    /// Current corner adjacency as unordered pairs (lower id first).
    pub corners: BTreeSet<(CompId, CompId)>,
    pub blowup_order: Vec<PointId>,
}

/// Rational points of the divisor `{x = 0}` (or `{y = 0}`) where both
/// strict-transform coefficients vanish; the chart-2 origin is the caller's
/// business. Errors when a positive-degree factor without rational roots
/// survives.
pub fn singular_points_on_divisor(strict: &OneFormGerm, divisor: Axis) -> Result<Vec<Rat>> {
    let (pr, qr) = match divisor {
        Axis::XZero => (strict.p().restrict_x0(), strict.q().restrict_x0()),
        Axis::YZero => (strict.p().restrict_y0(), strict.q().restrict_y0()),
    };
    let common = match (pr.is_zero(), qr.is_zero()) {
        (true, true) => {
            unreachable!("strict transform divisible by the divisor coordinate")
        }
        (false, true) => pr,
        (true, false) => qr,
        (false, false) => pr.gcd(&qr),
    };
    all_rational_roots(&common)
}

fn all_rational_roots(p: &UniPoly) -> Result<Vec<Rat>> {
    let (roots, leftover) = p.rational_roots();
    if let Some(factor) = leftover {
        return Err(Error::UnsupportedField {
            factor: factor.to_string(),
        });
    }
    Ok(roots)
}

/// Reduces the germ with the default deterministic blow-up order.
pub fn reduce(germ: &OneFormGerm, max_depth: u32) -> Result<ResolutionTree> {
    reduce_with(germ, max_depth, BlowupOrder::LowestIdFirst)
}

pub fn reduce_with(
    germ: &OneFormGerm,
    max_depth: u32,
    order: BlowupOrder,
) -> Result<ResolutionTree> {
    let mut tree = ResolutionTree {
        root_germ: germ.clone(),
        charts: vec![ChartData {
            id: 0,
            parent: None,
            kind: None,
            center: (Rat::zero(), Rat::zero()),
            birth_comp: None,
            blown_point: None,
        }],
        points: Vec::new(),
        components: Vec::new(),
        corners: BTreeSet::new(),
        blowup_order: Vec::new(),
    };
    let class = germ.classify();
    tree.points.push(InfNearPoint {
        id: 0,
        stage: 0,
        chart: 0,
        coords: (Rat::zero(), Rat::zero()),
        on_components: Vec::new(),
        germ: germ.clone(),
        class: class.clone(),
        blown_up: false,
        must_blow_up: matches!(class, SingularityClass::NonReduced),
        origin_blowup: None,
    });
    loop {
        let pending = tree
            .points
            .iter()
            .filter(|p| !p.blown_up && p.must_blow_up)
            .map(|p| p.id);
        let next = match order {
            BlowupOrder::LowestIdFirst => pending.min(),
            BlowupOrder::HighestIdFirst => pending.max(),
        };
        let Some(q) = next else { break };
        if tree.blowup_order.len() as u32 >= max_depth {
            return Err(Error::DepthExceeded(max_depth));
        }
        blow_up_point(&mut tree, q)?;
    }
    tree.audit();
    Ok(tree)
}

fn blow_up_point(tree: &mut ResolutionTree, q: PointId) -> Result<()> {
    let (germ, host_chart, coords, stage, on_comps) = {
        let p = &tree.points[q];
        (
            p.germ.clone(),
            p.chart,
            p.coords.clone(),
            p.stage,
            p.on_components.clone(),
        )
    };
    let result = blowup_any(&germ);
    let comp_id = tree.components.len();
    let rho = on_comps
        .iter()
        .map(|&(c, _)| tree.components[c].rho)
        .sum::<u64>()
        .max(1);

    let c1 = tree.charts.len();
    let c2 = c1 + 1;
    for (id, kind) in [(c1, ChartKind::First), (c2, ChartKind::Second)] {
        tree.charts.push(ChartData {
            id,
            parent: Some(host_chart),
            kind: Some(kind),
            center: coords.clone(),
            birth_comp: Some(comp_id),
            blown_point: Some(q),
        });
    }
    tree.components.push(Component {
        id: comp_id,
        birth_point: q,
        dicritical: result.dicritical,
        rho,
        charts: (c1, c2),
        points: Vec::new(),
    });

    // corner bookkeeping: blowing up a corner separates its two components
    if let [(a, _), (b, _)] = on_comps[..] {
        tree.corners.remove(&ordered(a, b));
    }
    for &(c, _) in &on_comps {
        tree.corners.insert(ordered(comp_id, c));
    }

    tree.points[q].blown_up = true;
    tree.blowup_order.push(q);

    let old_y: Vec<CompId> = on_comps
        .iter()
        .filter(|(_, a)| *a == Axis::YZero)
        .map(|&(c, _)| c)
        .collect();
    let old_x: Vec<CompId> = on_comps
        .iter()
        .filter(|(_, a)| *a == Axis::XZero)
        .map(|&(c, _)| c)
        .collect();

    // chart 1: divisor {x = 0}; old components along {y = 0} meet its origin
    let mut candidates: Vec<Rat> = if result.dicritical {
        // every contact point of the foliation with a dicritical component
        // (tangency or singularity) has to be blown up
        let contact = result.chart1.q().restrict_x0();
        debug_assert!(!contact.is_zero(), "dicritical divisor cannot be invariant");
        all_rational_roots(&contact)?
    } else {
        debug_assert!(
            result.chart1.q().x_order().map_or(true, |o| o >= 1),
            "non-dicritical divisor must be invariant"
        );
        singular_points_on_divisor(&result.chart1, Axis::XZero)?
    };
    if !old_y.is_empty() && !candidates.iter().any(|b| b.is_zero()) {
        candidates.push(Rat::zero());
    }
    for b in candidates {
        let germ_b = result.chart1.translate((&Rat::zero(), &b));
        let mut on: Vec<(CompId, Axis)> = vec![(comp_id, Axis::XZero)];
        if b.is_zero() {
            on.extend(old_y.iter().map(|&c| (c, Axis::YZero)));
        }
        record_point(tree, c1, (Rat::zero(), b), stage + 1, q, germ_b, on);
    }

    // chart 2: only its origin is new; old components along {x = 0} pass there
    let on2: Vec<(CompId, Axis)> = std::iter::once((comp_id, Axis::YZero))
        .chain(old_x.iter().map(|&c| (c, Axis::XZero)))
        .collect();
    record_point(
        tree,
        c2,
        (Rat::zero(), Rat::zero()),
        stage + 1,
        q,
        result.chart2.clone(),
        on2,
    );
    Ok(())
}

/// Stores a discovered point when it is singular or needs a forced blow-up.
fn record_point(
    tree: &mut ResolutionTree,
    chart: ChartId,
    coords: (Rat, Rat),
    stage: u32,
    origin: PointId,
    germ: OneFormGerm,
    on_components: Vec<(CompId, Axis)>,
) {
    let class = germ.classify();
    let singular = !matches!(class, SingularityClass::Regular);
    let dicritical_through: Vec<Axis> = on_components
        .iter()
        .filter(|&&(c, _)| tree.components[c].dicritical)
        .map(|&(_, a)| a)
        .collect();
    let tangent_to_dicritical = !singular
        && dicritical_through.iter().any(|&axis| {
            // foliation direction at the point is (-Q(0,0), P(0,0))
            match axis {
                Axis::XZero => germ.q().coeff(0, 0).is_zero(),
                Axis::YZero => germ.p().coeff(0, 0).is_zero(),
            }
        });
    let must_blow_up = matches!(class, SingularityClass::NonReduced)
        || (singular && !dicritical_through.is_empty())
        || dicritical_through.len() >= 2
        || tangent_to_dicritical;
    if !singular && !must_blow_up {
        return;
    }
    let id = tree.points.len();
    for &(c, _) in &on_components {
        tree.components[c].points.push(id);
    }
    tree.points.push(InfNearPoint {
        id,
        stage,
        chart,
        coords,
        on_components,
        germ,
        class,
        blown_up: false,
        must_blow_up,
        origin_blowup: Some(origin),
    });
}

fn ordered(a: CompId, b: CompId) -> (CompId, CompId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ResolutionTree {
    /// Structural invariants of a finished reduction.
    fn audit(&self) {
        for p in self.final_points() {
            assert!(
                p.class.is_reduced() || matches!(p.class, SingularityClass::Regular),
                "final point {} is not reduced: {:?}",
                p.id,
                p.class
            );
            assert!(
                p.on_components
                    .iter()
                    .all(|&(c, _)| !self.components[c].dicritical),
                "final singular point {} sits on a dicritical component",
                p.id
            );
        }
        for &(a, b) in &self.corners {
            assert!(
                !(self.components[a].dicritical && self.components[b].dicritical),
                "corner between two dicritical components {a} and {b}"
            );
        }
    }

    /// Final (never blown up) singular points.
    pub fn final_points(&self) -> impl Iterator<Item = &InfNearPoint> {
        self.points.iter().filter(|p| !p.blown_up)
    }

    /// Valence: number of other components meeting `d`.
    pub fn val(&self, d: CompId) -> u64 {
        self.corners
            .iter()
            .filter(|&&(a, b)| a == d || b == d)
            .count() as u64
    }

    /// True when `p` lies in the blow-up cascade rooted at `q` (inclusive).
    pub fn in_subtree(&self, p: PointId, q: PointId) -> bool {
        let mut cur = Some(p);
        while let Some(c) = cur {
            if c == q {
                return true;
            }
            cur = self.points[c].origin_blowup;
        }
        false
    }

    /// ρ(D) relative to the sub-resolution rooted at `q`: the recursion of
    /// `rho`, with components through the birth point that predate `q`
    /// excluded (they are invariant curves of the germ at `q`, not part of
    /// its own exceptional divisor).
    pub fn rho_relative(&self, q: PointId, d: CompId) -> Result<u64> {
        let birth = self.components[d].birth_point;
        if !self.in_subtree(birth, q) {
            return Err(Error::NotInSubtree);
        }
        let sum: u64 = self.points[birth]
            .on_components
            .iter()
            .filter(|&&(c, _)| self.in_subtree(self.components[c].birth_point, q))
            .map(|&(c, _)| self.rho_relative(q, c).expect("nested component"))
            .sum();
        Ok(sum.max(1))
    }

    /// Every final tangent saddle-node: its point, the component containing
    /// the weak separatrix, and the weak index.
    pub fn tangent_saddle_nodes(&self) -> Vec<(PointId, CompId, u32)> {
        let mut out = Vec::new();
        for p in self.final_points() {
            let SingularityClass::SaddleNode { weak_direction, .. } = &p.class else {
                continue;
            };
            for &(c, axis) in &p.on_components {
                if self.components[c].dicritical {
                    continue;
                }
                if *weak_direction == axis.direction() {
                    let index = p
                        .germ
                        .weak_index_along(axis)
                        .expect("invariant component through a saddle-node");
                    out.push((p.id, c, index));
                }
            }
        }
        out
    }

    /// Tangency excess ξ of the strict-transform germ at `q` (ξ_p for the
    /// root): the ρ-weighted sum of (weak index - 1) over tangent
    /// saddle-nodes of the sub-resolution rooted at `q`.
    pub fn xi_at_point(&self, q: PointId) -> u64 {
        self.tangent_saddle_nodes()
            .into_iter()
            .filter(|&(s, c, _)| {
                self.in_subtree(s, q) && self.in_subtree(self.components[c].birth_point, q)
            })
            .map(|(_, c, index)| {
                self.rho_relative(q, c).expect("component in subtree") * (index as u64 - 1)
            })
            .sum()
    }

    /// ξ_D: the birth-point recursion accumulating tangency excess along the
    /// cascade up to the birth of `D`.
    pub fn xi_along(&self, d: CompId) -> u64 {
        let birth = self.components[d].birth_point;
        let local = self.xi_at_point(birth);
        let inherited: u64 = self.points[birth]
            .on_components
            .iter()
            .map(|&(c, _)| self.xi_along(c))
            .sum();
        local + inherited
    }

    /// ν_D(F) by the birth-point recursion: multiplicity of the strict
    /// transform at the center, plus ν along the components through it, plus
    /// ε(D).
    pub fn nu_f_along(&self, d: CompId) -> u64 {
        let comp = &self.components[d];
        let birth = &self.points[comp.birth_point];
        let local = birth.germ.algebraic_multiplicity() as u64;
        let inherited: u64 = birth
            .on_components
            .iter()
            .map(|&(c, _)| self.nu_f_along(c))
            .sum();
        local + inherited + comp.epsilon() as u64
    }

    /// Independent oracle for `nu_f_along`: composes the chart chain from
    /// the root, pulls the 1-form back with no divisions, and reads off the
    /// vanishing order in the divisor coordinate.
    pub fn nu_f_direct(&self, d: CompId) -> u64 {
        let chart = self.components[d].charts.0;
        let chain = self.chart_chain(chart);
        let mut p = self.root_germ.p().clone();
        let mut q = self.root_germ.q().clone();
        let mut last_kind = None;
        for (kind, center) in chain {
            p = p.translate(&center.0, &center.1);
            q = q.translate(&center.0, &center.1);
            let (np, nq) = total_transform(&p, &q, kind);
            p = np;
            q = nq;
            last_kind = Some(kind);
        }
        let kind = last_kind.expect("component chart has a chain");
        match (kind.divisor_order(&p), kind.divisor_order(&q)) {
            (Some(a), Some(b)) => a.min(b) as u64,
            (Some(a), None) => a as u64,
            (None, Some(b)) => b as u64,
            (None, None) => unreachable!("pullback of a nonzero form"),
        }
    }

    /// Blow-up steps (chart kind, center) from the root chart down to `chart`.
    pub fn chart_chain(&self, chart: ChartId) -> Vec<(ChartKind, (Rat, Rat))> {
        let mut steps = Vec::new();
        let mut cur = chart;
        while let Some(parent) = self.charts[cur].parent {
            let c = &self.charts[cur];
            steps.push((c.kind.unwrap(), c.center.clone()));
            cur = parent;
        }
        steps.reverse();
        steps
    }

    /// Divisor-parameter values on `d`'s first chart that are already taken
    /// by recorded points or corners (used to place curvettas at free points).
    pub fn occupied_values(&self, d: CompId) -> BTreeSet<Rat> {
        let comp = &self.components[d];
        let mut used: BTreeSet<Rat> = comp
            .points
            .iter()
            .filter(|&&p| self.points[p].chart == comp.charts.0)
            .map(|&p| self.points[p].coords.1.clone())
            .collect();
        // both chart origins border possible corners with older components
        used.insert(Rat::zero());
        used
    }
}

#[cfg(test)]
pub mod tests {
    use super::*;
    use crate::algebra::{rat, BiPoly};

    fn xp(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, rat(c))
    }

    fn germ(p: BiPoly, q: BiPoly) -> OneFormGerm {
        OneFormGerm::new(p, q).unwrap()
    }

    fn radial() -> OneFormGerm {
        germ(xp(0, 1, -1), xp(1, 0, 1))
    }

    fn cusp() -> OneFormGerm {
        germ(xp(2, 0, -3), xp(0, 1, 2))
    }

    /// ω_k of the dicritical family at λ = 1.
    pub fn omega_k(k: u32) -> OneFormGerm {
        let p = xp(2 * k - 2, 1, 2)
            .add(&xp(2, k - 1, 4))
            .add(&BiPoly::monomial(0, k, rat(-1)));
        let q = xp(1, k - 1, 1)
            .add(&xp(3, k - 2, -2))
            .add(&xp(2 * k - 1, 0, -1));
        germ(p, q)
    }

    #[test]
    fn already_reduced_root() {
        let tree = reduce(&germ(xp(0, 1, 1), xp(1, 0, 1)), 64).unwrap();
        assert!(tree.components.is_empty());
        assert_eq!(tree.blowup_order.len(), 0);
    }

    #[test]
    fn radial_tree() {
        let tree = reduce(&radial(), 64).unwrap();
        assert_eq!(tree.components.len(), 1);
        assert!(tree.components[0].dicritical);
        assert_eq!(tree.components[0].rho, 1);
        assert_eq!(tree.val(0), 0);
        assert_eq!(tree.final_points().count(), 0);
        assert_eq!(tree.nu_f_along(0), 2);
        assert_eq!(tree.nu_f_direct(0), 2);
    }

    #[test]
    fn cusp_tree_shape() {
        let tree = reduce(&cusp(), 64).unwrap();
        assert_eq!(tree.components.len(), 3);
        assert!(tree.components.iter().all(|c| !c.dicritical));
        assert_eq!(tree.components[2].rho, 2);
        assert_eq!(tree.val(0), 1);
        assert_eq!(tree.val(1), 1);
        assert_eq!(tree.val(2), 2);
        // classical valuations (1, 2, 5), checked both ways
        for (d, expected) in [(0, 1), (1, 2), (2, 5)] {
            assert_eq!(tree.nu_f_along(d), expected);
            assert_eq!(tree.nu_f_direct(d), expected);
        }
        assert!(tree.tangent_saddle_nodes().is_empty());
        assert_eq!(tree.xi_at_point(0), 0);
    }

    #[test]
    fn omega3_tree_shape() {
        let tree = reduce(&omega_k(3), 64).unwrap();
        assert_eq!(tree.components.len(), 2);
        assert!(tree.components[0].dicritical);
        assert!(!tree.components[1].dicritical);
        // unique non-reduced singularity at stage 1
        let stage1: Vec<_> = tree.points.iter().filter(|p| p.stage == 1).collect();
        assert_eq!(stage1.len(), 1);
        assert!(matches!(stage1[0].class, SingularityClass::NonReduced));
        assert_eq!(tree.nu_f_along(0), 4);
        assert_eq!(tree.nu_f_along(1), 6);
        assert_eq!(tree.nu_f_direct(0), 4);
        assert_eq!(tree.nu_f_direct(1), 6);
        assert_eq!(tree.xi_at_point(0), 2);
        assert_eq!(tree.xi_along(0), 2);
        assert_eq!(tree.xi_along(1), 4);
    }

    #[test]
    fn rho_relative_cusp() {
        let tree = reduce(&cusp(), 64).unwrap();
        assert_eq!(tree.rho_relative(0, 2).unwrap(), tree.components[2].rho);
        let q1 = tree.blowup_order[1];
        assert_eq!(tree.rho_relative(q1, 1).unwrap(), 1);
        assert_eq!(tree.rho_relative(q1, 2).unwrap(), 1);
        assert!(tree.rho_relative(q1, 0).is_err());
    }

    #[test]
    fn singular_points_extraction() {
        // cusp first strict transform (2y^2 - 3x) dx + 2xy dy on {x = 0}
        let strict = germ(xp(0, 2, 2).add(&xp(1, 0, -3)), xp(1, 1, 2));
        let pts = singular_points_on_divisor(&strict, Axis::XZero).unwrap();
        assert_eq!(pts, vec![rat(0)]);
        // radial strict transform dy has no singular points on the divisor
        let r = germ(BiPoly::zero(), BiPoly::one());
        assert!(singular_points_on_divisor(&r, Axis::XZero)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn irrational_point_is_diagnosed() {
        // d(y^2 - 2x^4): the second blow-up meets the divisor at y^2 = 2
        let g = germ(xp(3, 0, -8), xp(0, 1, 2));
        match reduce(&g, 64) {
            Err(Error::UnsupportedField { factor }) => {
                assert!(factor.contains("t^2"), "unexpected factor {factor}");
            }
            other => panic!("expected unsupported-field error, got {other:?}"),
        }
    }

    #[test]
    fn order_independence_of_invariants() {
        for g in [radial(), cusp(), omega_k(3), omega_k(4)] {
            let a = reduce_with(&g, 64, BlowupOrder::LowestIdFirst).unwrap();
            let b = reduce_with(&g, 64, BlowupOrder::HighestIdFirst).unwrap();
            let mut sig_a: Vec<_> = (0..a.components.len())
                .map(|d| (a.components[d].dicritical, a.components[d].rho, a.val(d), a.nu_f_along(d), a.xi_along(d)))
                .collect();
            let mut sig_b: Vec<_> = (0..b.components.len())
                .map(|d| (b.components[d].dicritical, b.components[d].rho, b.val(d), b.nu_f_along(d), b.xi_along(d)))
                .collect();
            sig_a.sort();
            sig_b.sort();
            assert_eq!(sig_a, sig_b);
        }
    }
}
