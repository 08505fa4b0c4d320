//! Bivariate GCD via content/primitive-part reduction to a subresultant
//! polynomial remainder sequence in `x` over the ring Q[y], plus a
//! resultant in `y` computed by specialization and interpolation.

use num::{One, Zero};

use super::bipoly::BiPoly;
use super::rational::{rat, Rat};
use super::unipoly::UniPoly;

/// `p` viewed as a polynomial in `x` with coefficients in Q[y];
/// index = power of `x`.
type XPoly = Vec<UniPoly>;

fn to_xpoly(p: &BiPoly) -> XPoly {
    let deg = p.deg_x().map_or(0, |d| d as usize);
    let dy = p.deg_y().map_or(0, |d| d as usize);
    let mut out = vec![vec![Rat::zero(); dy + 1]; deg + 1];
    for (&(i, j), c) in p.terms() {
        out[i as usize][j as usize] = c.clone();
    }
    let mut xp: XPoly = out.into_iter().map(UniPoly::from_coeffs).collect();
    trim(&mut xp);
    xp
}

fn from_xpoly(xp: &XPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, c) in xp.iter().enumerate() {
        for (j, r) in c.coeffs().iter().enumerate() {
            out = out.add(&BiPoly::monomial(i as u32, j as u32, r.clone()));
        }
    }
    out
}

fn trim(xp: &mut XPoly) {
    while xp.last().is_some_and(|c| c.is_zero()) {
        xp.pop();
    }
}

fn deg(xp: &XPoly) -> Option<usize> {
    xp.len().checked_sub(1)
}

fn lead(xp: &XPoly) -> &UniPoly {
    xp.last().expect("nonzero XPoly")
}

fn xp_scale(xp: &XPoly, c: &UniPoly) -> XPoly {
    let mut out: XPoly = xp.iter().map(|a| a.mul(c)).collect();
    trim(&mut out);
    out
}

fn xp_sub(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let zero = UniPoly::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    trim(&mut out);
    out
}

fn xp_shift(xp: &XPoly, k: usize) -> XPoly {
    if xp.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UniPoly::zero(); k];
    out.extend(xp.iter().cloned());
    out
}

fn xp_exact_div_coeff(xp: &XPoly, d: &UniPoly) -> XPoly {
    xp.iter()
        .map(|c| c.exact_div(d).expect("exact coefficient division in PRS"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` in x: `lc(b)^(da-db+1) * a mod b`.
fn prem(a: &XPoly, b: &XPoly) -> XPoly {
    let db = deg(b).expect("nonzero divisor");
    let lb = lead(b).clone();
    let mut r = a.clone();
    // exactly deg(a) - db + 1 multiplications by lc(b) are required for the
    // subresultant divisions to be exact, even when a step drops the degree
    // by more than one
    let mut e = deg(a).map_or(0, |da| da.saturating_sub(db) + 1);
    while deg(&r).is_some_and(|dr| dr >= db) {
        let dr = deg(&r).unwrap();
        let lr = lead(&r).clone();
        // r := lb * r - lr * x^(dr-db) * b
        r = xp_sub(&xp_scale(&r, &lb), &xp_shift(&xp_scale(b, &lr), dr - db));
        e -= 1;
        if deg(&r) == Some(dr) {
            // leading term must cancel exactly
            unreachable!("pseudo-division failed to reduce the degree");
        }
    }
    xp_scale(&r, &lb.pow(e as u32))
}

fn content_x(xp: &XPoly) -> UniPoly {
    let mut c = UniPoly::zero();
    for a in xp {
        if !a.is_zero() {
            c = if c.is_zero() { a.primitive() } else { c.gcd(a) };
        }
    }
    c
}

fn primitive_x(xp: &XPoly) -> XPoly {
    let c = content_x(xp);
    if c.is_zero() {
        return Vec::new();
    }
    xp_exact_div_coeff(xp, &c)
}

/// Subresultant PRS GCD of two primitive XPolys.
fn subresultant_gcd(a0: &XPoly, b0: &XPoly) -> XPoly {
    let (mut a, mut b) = if deg(a0) >= deg(b0) {
        (a0.clone(), b0.clone())
    } else {
        (b0.clone(), a0.clone())
    };
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let d = deg(&a).unwrap() - deg(&b).unwrap();
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive_x(&b);
        }
        if deg(&r) == Some(0) {
            return vec![UniPoly::one()];
        }
        a = b;
        // divide the pseudo-remainder by g * h^d
        let divisor = g.mul(&h.pow(d as u32));
        b = xp_exact_div_coeff(&r, &divisor);
        g = lead(&a).clone();
        h = if d == 0 {
            h
        } else {
            // h := g^d / h^(d-1), exact in Q[y]
            g.pow(d as u32)
                .exact_div(&h.pow(d as u32 - 1))
                .expect("exact h update in subresultant PRS")
        };
    }
}

/// GCD of two bivariate polynomials, normalized to content 1 with a positive
/// lex-leading coefficient. Returns a constant (unit) iff the inputs are
/// coprime; `gcd(0, q) = normalize(q)`.
pub fn gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.normalize();
    }
    if q.is_zero() {
        return p.normalize();
    }
    let xp = to_xpoly(p);
    let xq = to_xpoly(q);
    let cp = content_x(&xp);
    let cq = content_x(&xq);
    let cc = cp.gcd(&cq);
    let pp = primitive_x(&xp);
    let pq = primitive_x(&xq);
    let core = if deg(&pp) == Some(0) || deg(&pq) == Some(0) {
        vec![UniPoly::one()]
    } else {
        subresultant_gcd(&pp, &pq)
    };
    from_xpoly(&xp_scale(&core, &cc)).normalize()
}

/// Resultant of `p` and `q` with respect to `y`, as a polynomial in `x`.
///
/// Computed by specializing `x` at sample points where neither leading
/// `y`-coefficient vanishes and interpolating; zero when the inputs share a
/// factor of positive `y`-degree (or one of them is zero).
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> UniPoly {
    if p.is_zero() || q.is_zero() {
        return UniPoly::zero();
    }
    let m = p.deg_y().unwrap();
    let n = q.deg_y().unwrap();
    if m == 0 && n == 0 {
        return UniPoly::one();
    }
    // leading y-coefficients as polynomials in x
    let lead_x = |r: &BiPoly, d: u32| -> UniPoly {
        let dx = r.deg_x().map_or(0, |v| v as usize);
        let mut coeffs = vec![Rat::zero(); dx + 1];
        for (&(i, j), c) in r.terms() {
            if j == d {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    };
    let lp = lead_x(p, m);
    let lq = lead_x(q, n);
    let bound = (p.deg_x().unwrap_or(0) * n + q.deg_x().unwrap_or(0) * m) as usize;
    let mut samples: Vec<(Rat, Rat)> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while samples.len() < bound + 1 {
        let x0 = rat(k);
        k += 1;
        if lp.eval(&x0).is_zero() || lq.eval(&x0).is_zero() {
            continue;
        }
        let fy = specialize_x(p, &x0);
        let gy = specialize_x(q, &x0);
        samples.push((x0, resultant_uni(&fy, &gy)));
    }
    lagrange_interpolate(&samples)
}

fn specialize_x(p: &BiPoly, x0: &Rat) -> UniPoly {
    let dy = p.deg_y().map_or(0, |d| d as usize);
    let mut coeffs = vec![Rat::zero(); dy + 1];
    for (&(i, j), c) in p.terms() {
        let mut t = c.clone();
        for _ in 0..i {
            t *= x0;
        }
        coeffs[j as usize] += t;
    }
    UniPoly::from_coeffs(coeffs)
}

/// Univariate resultant over Q by the Euclidean remainder sequence.
fn resultant_uni(f: &UniPoly, g: &UniPoly) -> Rat {
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc = Rat::one();
    loop {
        let m = match f.degree() {
            None => return Rat::zero(),
            Some(m) => m,
        };
        let n = match g.degree() {
            None => return Rat::zero(),
            Some(n) => n,
        };
        if n == 0 {
            let mut p = Rat::one();
            let c = g.leading().unwrap();
            for _ in 0..m {
                p *= c;
            }
            return acc * p;
        }
        if m < n {
            if m & 1 == 1 && n & 1 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        let (_, r) = f.divrem(&g);
        if r.is_zero() {
            // g has positive degree and divides f: common root
            return Rat::zero();
        }
        let s = r.degree().unwrap();
        let lc = g.leading().unwrap().clone();
        let mut p = Rat::one();
        for _ in 0..(m - s) {
            p *= &lc;
        }
        if m & 1 == 1 && n & 1 == 1 {
            acc = -acc;
        }
        acc *= p;
        f = g;
        g = r;
    }
}

fn lagrange_interpolate(samples: &[(Rat, Rat)]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Rat::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(vec![-xj, Rat::one()]));
            denom *= xi - xj;
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn xp(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, rat(c))
    }

    #[test]
    fn gcd_monomials() {
        assert_eq!(gcd(&xp(2, 1, 1), &xp(1, 2, 1)), xp(1, 1, 1));
    }

    #[test]
    fn gcd_coprime_is_unit() {
        let cusp = xp(3, 0, 1).sub(&xp(0, 2, 1));
        let g = gcd(&cusp, &BiPoly::var_x());
        assert!(g.is_constant() && !g.is_zero());
    }

    #[test]
    fn gcd_common_linear_factor() {
        let s = xp(1, 0, 1).add(&xp(0, 1, 1)); // x + y
        let p = BiPoly::var_x().mul(&s);
        let q = BiPoly::var_y().mul(&s);
        assert_eq!(gcd(&p, &q), s);
    }

    #[test]
    fn gcd_divides_and_cofactors_coprime() {
        let s = xp(1, 0, 2).add(&xp(0, 2, 3)); // 2x + 3y^2
        let p = s.mul(&xp(2, 1, 5)).mul(&s);
        let q = s.mul(&xp(0, 3, -7).add(&xp(1, 0, 1)));
        let g = gcd(&p, &q);
        let pc = p.exact_div(&g).unwrap();
        let qc = q.exact_div(&g).unwrap();
        assert!(gcd(&pc, &qc).is_constant());
        assert!(g.exact_div(&s).is_some());
    }

    #[test]
    fn gcd_with_scaled_inputs_is_normalized() {
        let s = xp(1, 1, 1).add(&xp(0, 0, 1));
        let g = gcd(&s.scale(&rat(-6)), &s.scale(&rat(4)));
        assert_eq!(g, s);
    }

    #[test]
    fn resultant_of_axes() {
        // res_y(y, x) = x
        let r = resultant_y(&BiPoly::var_y(), &BiPoly::var_x());
        assert_eq!(r, UniPoly::var());
    }

    #[test]
    fn resultant_of_cusp_and_line() {
        // res_y(y^2 - x^3, y - x) = x^2 - x^3
        let p = xp(0, 2, 1).sub(&xp(3, 0, 1));
        let q = xp(0, 1, 1).sub(&xp(1, 0, 1));
        let r = resultant_y(&p, &q);
        let expected = UniPoly::from_coeffs(vec![rat(0), rat(0), rat(1), rat(-1)]);
        assert_eq!(r, expected);
    }

    #[test]
    fn resultant_detects_common_factor() {
        let s = xp(1, 0, 1).add(&xp(0, 1, 1));
        let r = resultant_y(&s.mul(&BiPoly::var_x()), &s.mul(&BiPoly::var_y()));
        assert!(r.is_zero());
    }
}
