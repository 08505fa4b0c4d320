use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::{Integer, One, Signed, Zero};

use super::rational::Rat;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, `coeffs[i]` holding the
/// degree-`i` coefficient. Canonical form: no trailing zeros, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

/// Polynomials in the curvetta parameter `t` share the univariate carrier.
pub type ParamPoly = UniPoly;

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order in `t`: the least exponent with nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn add_constant(&self, c: &Rat) -> Self {
        self.add(&Self::constant(c.clone()))
    }

    /// Euclidean division over the field of rationals.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let rd = rem.len() - 1;
            let c = rem[rd].clone() / &lead;
            if !c.is_zero() {
                quo[rd - dd] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = rd - dd + i;
                    let sub = dc * &c;
                    rem[idx] -= sub;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Primitive associate: integer coprime coefficients, positive leading
    /// coefficient. Returns the zero polynomial unchanged.
    pub fn primitive(&self) -> Self {
        match self.content() {
            Some(c) => Self {
                coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
            },
            None => Self::zero(),
        }
    }

    /// Signed rational content: the unique `c` with `self = c * primitive`.
    pub fn content(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().is_negative() {
            content = -content;
        }
        Some(content)
    }

    /// GCD over the rationals, normalized to the primitive associate.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Extracts the distinct rational roots, deflating each one fully.
    /// Returns the roots together with the nonconstant rational-root-free
    /// factor that remains, when there is one.
    pub fn rational_roots(&self) -> (Vec<Rat>, Option<UniPoly>) {
        let mut roots = Vec::new();
        if self.is_zero() {
            return (roots, None);
        }
        let mut p = self.clone();
        if let Some(k) = p.ord() {
            if k > 0 {
                roots.push(Rat::zero());
                p = UniPoly::from_coeffs(p.coeffs[k..].to_vec());
            }
        }
        loop {
            if p.degree().unwrap_or(0) == 0 {
                return (roots, None);
            }
            match find_rational_root(&p) {
                Some(r) => {
                    let lin = UniPoly::from_coeffs(vec![-&r, Rat::one()]);
                    while let Some(q) = p.exact_div(&lin) {
                        p = q;
                        if p.degree().unwrap_or(0) == 0 {
                            break;
                        }
                    }
                    roots.push(r);
                }
                None => {
                    return (roots, Some(p.primitive()));
                }
            }
        }
    }
}

/// One rational root of a primitive-normalizable polynomial of degree >= 1,
/// found by the rational root theorem over the integer-scaled coefficients.
fn find_rational_root(p: &UniPoly) -> Option<Rat> {
    let prim = p.primitive();
    if prim.coeff(0).is_zero() {
        return Some(Rat::zero());
    }
    let a0 = prim.coeff(0).numer().magnitude().clone();
    let an = prim.leading().unwrap().numer().magnitude().clone();
    let nums = divisors(&a0)?;
    let dens = divisors(&an)?;
    for n in &nums {
        for d in &dens {
            let cand = Rat::new(BigInt::from(n.clone()), BigInt::from(d.clone()));
            if prim.eval(&cand).is_zero() {
                return Some(cand);
            }
            let neg = -&cand;
            if prim.eval(&neg).is_zero() {
                return Some(neg);
            }
        }
    }
    None
}

const TRIAL_LIMIT: u64 = 1_000_000;
const DIVISOR_CAP: usize = 1 << 16;

/// Divisors via bounded trial division. An unfactored cofactor is kept as a
/// single pseudo-prime, so divisors hidden inside a composite cofactor are
/// not enumerated; callers treat a miss as an unsupported-field outcome.
fn divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let push = |p: BigUint, e: u32, fs: &mut Vec<(BigUint, u32)>| {
        if e > 0 {
            fs.push((p, e));
        }
    };
    for p in std::iter::once(2u64).chain((3..TRIAL_LIMIT).step_by(2)) {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        push(bp, e, &mut factors);
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        push(m, 1, &mut factors);
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc *= &p;
                next.push(acc.clone());
            }
        }
        divs = next;
        if divs.len() > DIVISOR_CAP {
            return None;
        }
    }
    Some(divs)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Order of `p`, failing on the zero polynomial.
pub fn ord_t(p: &UniPoly) -> Result<usize> {
    p.ord().ok_or(Error::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[2, 0, -3, 1]); // t^3 - 3t^2 + 2
        let b = p(&[-1, 1]); // t - 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_primitive_normalization() {
        let a = p(&[0, 0, 6]); // 6t^2
        let b = p(&[0, -4]); // -4t
        assert_eq!(a.gcd(&b), p(&[0, 1]));
    }

    #[test]
    fn rational_roots_with_multiplicity_and_leftover() {
        // (t - 1)^2 (t + 2) (t^2 + 1)
        let q = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1])).mul(&p(&[1, 0, 1]));
        let (mut roots, leftover) = q.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![rat(-2), rat(1)]);
        assert_eq!(leftover, Some(p(&[1, 0, 1])));
    }

    #[test]
    fn rational_roots_fractional() {
        // (2t - 3)(t + 5)
        let q = p(&[-3, 2]).mul(&p(&[5, 1]));
        let (mut roots, leftover) = q.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![rat(-5), Rat::new(3.into(), 2.into())]);
        assert!(leftover.is_none());
    }

    #[test]
    fn order_and_degree() {
        let q = p(&[0, 0, 5, 1]);
        assert_eq!(q.ord(), Some(2));
        assert_eq!(q.degree(), Some(3));
        assert_eq!(UniPoly::zero().ord(), None);
    }
}
