//! Property tests for the algebra kernel and corpus-wide identity checks.

mod common;

use folres::algebra::{bipoly_gcd, rat, BiPoly};
use folres::error::Error;
use folres::resolution::reduce;
use folres::valuation::verify;
use proptest::prelude::*;

fn arb_bipoly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(
        (0..=max_deg, 0..=max_deg, -4..=4i64),
        1..=max_terms,
    )
    .prop_map(|terms| {
        let mut out = BiPoly::zero();
        for (i, j, c) in terms {
            out = out.add(&BiPoly::monomial(i, j, rat(c)));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_multiplicative(f in arb_bipoly(4, 4), g in arb_bipoly(4, 4)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g);
        prop_assert_eq!(fg.order(), Some(f.order().unwrap() + g.order().unwrap()));
    }

    #[test]
    fn substitution_is_a_ring_map(
        f in arb_bipoly(3, 3),
        g in arb_bipoly(3, 3),
        u in arb_bipoly(2, 2),
        v in arb_bipoly(2, 2),
    ) {
        let sum = f.add(&g).substitute(&u, &v);
        prop_assert_eq!(sum, f.substitute(&u, &v).add(&g.substitute(&u, &v)));
        let prod = f.mul(&g).substitute(&u, &v);
        prop_assert_eq!(prod, f.substitute(&u, &v).mul(&g.substitute(&u, &v)));
    }

    #[test]
    fn gcd_divides_with_coprime_cofactors(f in arb_bipoly(3, 3), g in arb_bipoly(3, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = bipoly_gcd(&f, &g);
        let cf = f.exact_div(&d);
        let cg = g.exact_div(&d);
        prop_assert!(cf.is_some() && cg.is_some());
        prop_assert!(bipoly_gcd(&cf.unwrap(), &cg.unwrap()).is_constant());
    }
}

/// Corpus-wide exactness: every successfully resolved input satisfies the
/// valuation identities and the two ways of computing nu_D agree.
#[test]
fn corpus_identities_hold() {
    let germs = common::corpus(0xC0FFEE, 140, 5);
    let mut resolved = 0usize;
    let mut skipped = 0usize;
    for g in &germs {
        match reduce(g, 64) {
            Ok(tree) => {
                let r = verify(&tree);
                assert!(r.all_ok(), "identity violated for {:?}: {:?}", g, r);
                resolved += 1;
            }
            Err(Error::UnsupportedField { .. }) | Err(Error::DepthExceeded(_)) => {
                skipped += 1;
            }
            Err(e) => panic!("unexpected failure for {g:?}: {e:?}"),
        }
    }
    assert!(resolved >= 100, "only {resolved} resolved, {skipped} skipped");
}
