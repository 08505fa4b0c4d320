//! Shared corpus generation for the integration suites: seeded, sparse,
//! small-degree 1-forms with exact rational coefficients.

use folres::algebra::{rat, BiPoly};
use folres::foliation::OneFormGerm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_bipoly(rng: &mut ChaCha8Rng, max_deg: u32, max_terms: usize) -> BiPoly {
    let terms = rng.gen_range(1..=max_terms);
    let mut out = BiPoly::zero();
    for _ in 0..terms {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg.saturating_sub(i));
        let c = rng.gen_range(-3..=3i64);
        out = out.add(&BiPoly::monomial(i, j, rat(c)));
    }
    out
}

/// `n` nonzero coprime germs of total degree at most `max_deg`, mixing fully
/// random sparse pairs with exact differentials (which resolve deeper).
pub fn corpus(seed: u64, n: usize, max_deg: u32) -> Vec<OneFormGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let germ = if out.len() % 3 == 0 {
            // d(f) for a random f: P = f_x, Q = f_y
            let f = random_bipoly(&mut rng, max_deg + 1, 3);
            OneFormGerm::new(f.d_dx(), f.d_dy())
        } else {
            let p = random_bipoly(&mut rng, max_deg, 4);
            let q = random_bipoly(&mut rng, max_deg, 4);
            OneFormGerm::new(p, q)
        };
        if let Ok(g) = germ {
            out.push(g);
        }
    }
    out
}
