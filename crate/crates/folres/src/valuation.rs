//! Valuations along exceptional components and the identities tying them
//! together: for every component D,
//!
//!   nu_D(Psi) = nu_D(F) + 1 - epsilon(D) - xi_D
//!
//! together with the root identity nu_p(F) = nu_p(B) - 1 + xi_p and the
//! inequality nu_D(Psi) - 1 + epsilon(D) <= nu_D(F). Violations are
//! reported, never thrown: the identities are theorems, so a failure flags
//! an implementation bug.

use crate::divisors::{balanced_divisor_with, SeparatrixDivisor};
use crate::resolution::{CompId, ResolutionTree};

#[derive(Clone, Debug)]
pub struct ComponentRow {
    pub id: CompId,
    pub dicritical: bool,
    pub rho: u64,
    pub val: u64,
    pub epsilon: i64,
    pub nu_f: u64,
    pub nu_f_direct: u64,
    pub nu_psi: i64,
    pub xi: u64,
    pub theorem_ok: bool,
    pub corollary_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ValuationReport {
    pub components: Vec<ComponentRow>,
    pub nu_p: u64,
    pub nu_b: i64,
    pub xi_p: u64,
    pub prop34_ok: bool,
    pub second_type: bool,
}

impl ValuationReport {
    pub fn all_ok(&self) -> bool {
        self.prop34_ok
            && self
                .components
                .iter()
                .all(|c| c.theorem_ok && c.corollary_ok && c.nu_f == c.nu_f_direct)
    }
}

/// nu_D of the balanced divisor by the birth-point recursion: multiplicity
/// of the strict transform of the divisor at the center, plus nu along the
/// components through it.
pub fn nu_divisor_along(tree: &ResolutionTree, d: CompId, b: &SeparatrixDivisor) -> i64 {
    let birth = tree.components[d].birth_point;
    let local = b.multiplicity_at(birth);
    let inherited: i64 = tree.points[birth]
        .on_components
        .iter()
        .map(|&(c, _)| nu_divisor_along(tree, c, b))
        .sum();
    local + inherited
}

pub fn verify(tree: &ResolutionTree) -> ValuationReport {
    verify_with(tree, &balanced_divisor_with(tree, 0))
}

pub fn verify_with(tree: &ResolutionTree, b: &SeparatrixDivisor) -> ValuationReport {
    let components = (0..tree.components.len())
        .map(|d| {
            let comp = &tree.components[d];
            let epsilon = comp.epsilon();
            let nu_f = tree.nu_f_along(d);
            let nu_psi = nu_divisor_along(tree, d, b);
            let xi = tree.xi_along(d);
            ComponentRow {
                id: d,
                dicritical: comp.dicritical,
                rho: comp.rho,
                val: tree.val(d),
                epsilon,
                nu_f,
                nu_f_direct: tree.nu_f_direct(d),
                nu_psi,
                xi,
                theorem_ok: nu_psi == nu_f as i64 + 1 - epsilon - xi as i64,
                corollary_ok: nu_psi - 1 + epsilon <= nu_f as i64,
            }
        })
        .collect();
    let nu_p = tree.root_germ.algebraic_multiplicity() as u64;
    let nu_b = b.multiplicity_at_root();
    let xi_p = tree.xi_at_point(0);
    ValuationReport {
        components,
        nu_p,
        nu_b,
        xi_p,
        prop34_ok: nu_p as i64 == nu_b - 1 + xi_p as i64,
        second_type: xi_p == 0 && tree.tangent_saddle_nodes().is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, BiPoly};
    use crate::divisors::balanced_divisor;
    use crate::foliation::OneFormGerm;
    use crate::resolution::{reduce, tests::omega_k};

    fn xp(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, rat(c))
    }

    fn germ(p: BiPoly, q: BiPoly) -> OneFormGerm {
        OneFormGerm::new(p, q).unwrap()
    }

    #[test]
    fn radial_report() {
        let tree = reduce(&germ(xp(0, 1, -1), xp(1, 0, 1)), 64).unwrap();
        let r = verify(&tree);
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert_eq!((c.nu_f, c.nu_psi, c.xi, c.epsilon), (2, 2, 0, 1));
        assert!(r.all_ok());
        assert!(r.second_type);
    }

    #[test]
    fn cusp_report() {
        let tree = reduce(&germ(xp(2, 0, -3), xp(0, 1, 2)), 64).unwrap();
        let r = verify(&tree);
        let rows: Vec<_> = r.components.iter().map(|c| (c.nu_f, c.nu_psi, c.xi)).collect();
        assert_eq!(rows, vec![(1, 2, 0), (2, 3, 0), (5, 6, 0)]);
        assert!(r.all_ok());
        assert!(r.second_type);
        assert_eq!((r.nu_p, r.nu_b, r.xi_p), (1, 2, 0));
    }

    #[test]
    fn omega3_report() {
        let tree = reduce(&omega_k(3), 64).unwrap();
        let r = verify(&tree);
        let d1 = &r.components[0];
        let d2 = &r.components[1];
        assert!(d1.dicritical && !d2.dicritical);
        assert_eq!((d1.nu_f, d1.nu_psi, d1.xi), (4, 2, 2));
        assert_eq!((d2.nu_f, d2.nu_psi, d2.xi), (6, 3, 4));
        assert!(r.all_ok());
        assert!(!r.second_type);
    }

    #[test]
    fn reduced_roots() {
        for g in [
            germ(xp(0, 1, 1), xp(1, 0, 1)),  // non-degenerate
            germ(xp(0, 1, -1), xp(2, 0, 1)), // saddle-node
        ] {
            let tree = reduce(&g, 64).unwrap();
            let r = verify(&tree);
            assert!(r.components.is_empty());
            assert!(r.prop34_ok, "{:?}", r);
        }
    }

    #[test]
    fn choice_independence() {
        for g in [germ(xp(0, 1, -1), xp(1, 0, 1)), omega_k(3), omega_k(4)] {
            let tree = reduce(&g, 64).unwrap();
            let base = verify_with(&tree, &balanced_divisor(&tree));
            for offset in [3, 11] {
                let shifted = verify_with(&tree, &balanced_divisor_with(&tree, offset));
                for (a, b) in base.components.iter().zip(shifted.components.iter()) {
                    assert_eq!(a.nu_psi, b.nu_psi);
                }
                assert_eq!(base.nu_b, shifted.nu_b);
            }
        }
    }
}
