use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::rational::Rat;

/// Sparse trivariate polynomial over the rationals; carrier for the
/// homogeneous coefficients of a projective 1-form in `x, y, z`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), Rat>,
}

/// The three standard affine charts of the projective plane.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AffineChart {
    /// z = 1, affine coordinates (x, y)
    Z1,
    /// y = 1, affine coordinates (x, z)
    Y1,
    /// x = 1, affine coordinates (y, z)
    X1,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, k: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j, k), c);
        }
        Self { terms }
    }

    pub fn var(idx: usize) -> Self {
        match idx {
            0 => Self::monomial(1, 0, 0, Rat::one()),
            1 => Self::monomial(0, 1, 0, Rat::one()),
            _ => Self::monomial(0, 0, 1, Rat::one()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), r1) in &self.terms {
            for (&(d, e, g), r2) in &other.terms {
                out.add_term((a + d, b + e, c + g), r1 * r2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(i, j, k)| i + j + k);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn partial(&self, idx: usize) -> Self {
        let mut out = Self::zero();
        for (&(i, j, k), c) in &self.terms {
            let (e, key) = match idx {
                0 => (i, (i.wrapping_sub(1), j, k)),
                1 => (j, (i, j.wrapping_sub(1), k)),
                _ => (k, (i, j, k.wrapping_sub(1))),
            };
            if e > 0 {
                out.add_term(key, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn divisible_by_var(&self, idx: usize) -> bool {
        self.terms.keys().all(|&(i, j, k)| match idx {
            0 => i > 0,
            1 => j > 0,
            _ => k > 0,
        })
    }

    /// Sets the chart variable to 1 and maps the two remaining variables to
    /// the affine `(x, y)` slots in coordinate order.
    pub fn dehomogenize(&self, chart: AffineChart) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            let (a, b) = match chart {
                AffineChart::Z1 => (i, j),
                AffineChart::Y1 => (i, k),
                AffineChart::X1 => (j, k),
            };
            out = out.add(&BiPoly::monomial(a, b, c.clone()));
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j, k), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t *= x;
            }
            for _ in 0..j {
                t *= y;
            }
            for _ in 0..k {
                t *= z;
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut pieces: Vec<String> = Vec::new();
            if !a.is_one() || (i, j, k) == (0, 0, 0) {
                pieces.push(a.to_string());
            }
            for (sym, e) in [("x", i), ("y", j), ("z", k)] {
                match e {
                    0 => {}
                    1 => pieces.push(sym.to_string()),
                    _ => pieces.push(format!("{sym}^{e}")),
                }
            }
            write!(f, "{}", pieces.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    #[test]
    fn homogeneity_and_euler() {
        // A = yz, B = xz, C = -2xy satisfy Ax + By + Cz = 0
        let a = TriPoly::monomial(0, 1, 1, rat(1));
        let b = TriPoly::monomial(1, 0, 1, rat(1));
        let c = TriPoly::monomial(1, 1, 0, rat(-2));
        assert_eq!(a.homogeneous_degree(), Some(2));
        let euler = a
            .mul(&TriPoly::var(0))
            .add(&b.mul(&TriPoly::var(1)))
            .add(&c.mul(&TriPoly::var(2)));
        assert!(euler.is_zero());
    }

    #[test]
    fn dehomogenize_charts() {
        let b = TriPoly::monomial(1, 0, 1, rat(1)); // xz
        assert_eq!(b.dehomogenize(AffineChart::Z1), BiPoly::var_x());
        assert_eq!(
            b.dehomogenize(AffineChart::Y1),
            BiPoly::var_x().mul(&BiPoly::var_y())
        );
        assert_eq!(b.dehomogenize(AffineChart::X1), BiPoly::var_y());
    }

    #[test]
    fn partial_derivatives() {
        let p = TriPoly::monomial(2, 1, 0, rat(3)); // 3x^2 y
        assert_eq!(p.partial(0), TriPoly::monomial(1, 1, 0, rat(6)));
        assert_eq!(p.partial(2), TriPoly::zero());
    }
}
