use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::rational::Rat;
use super::unipoly::{ParamPoly, UniPoly};
use crate::error::{Error, Result};

/// Sparse bivariate polynomial over the rationals. Terms map the exponent
/// pair `(i, j)` of `x^i y^j` to a nonzero coefficient; canonical form means
/// zero coefficients are simply absent, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Order at the origin: the minimum of `i + j` over the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    /// Order at the origin, failing on the zero polynomial.
    pub fn order_at_origin(&self) -> Result<u32> {
        self.order().ok_or(Error::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Least power of `x` appearing in any term.
    pub fn x_order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Least power of `y` appearing in any term.
    pub fn y_order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Sum of the terms of total degree exactly `d` (possibly zero).
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
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

    /// Exact composition `p(x_expr, y_expr)`.
    pub fn substitute(&self, x_expr: &Self, y_expr: &Self) -> Self {
        let max_i = self.deg_x().unwrap_or(0) as usize;
        let max_j = self.deg_y().unwrap_or(0) as usize;
        let mut x_pows = Vec::with_capacity(max_i + 1);
        let mut y_pows = Vec::with_capacity(max_j + 1);
        x_pows.push(Self::one());
        for i in 1..=max_i {
            x_pows.push(x_pows[i - 1].mul(x_expr));
        }
        y_pows.push(Self::one());
        for j in 1..=max_j {
            y_pows.push(y_pows[j - 1].mul(y_expr));
        }
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let term = x_pows[i as usize].mul(&y_pows[j as usize]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Re-centers the polynomial at `(a, b)`: `p(x + a, y + b)`.
    pub fn translate(&self, a: &Rat, b: &Rat) -> Self {
        let xe = Self::var_x().add(&Self::constant(a.clone()));
        let ye = Self::var_y().add(&Self::constant(b.clone()));
        self.substitute(&xe, &ye)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..i {
                term *= x;
            }
            for _ in 0..j {
                term *= y;
            }
            acc += term;
        }
        acc
    }

    /// Exact composition `p(γ1(t), γ2(t))`.
    pub fn eval_on_param(&self, gamma: &(ParamPoly, ParamPoly)) -> ParamPoly {
        let max_i = self.deg_x().unwrap_or(0) as usize;
        let max_j = self.deg_y().unwrap_or(0) as usize;
        let mut x_pows = vec![ParamPoly::one()];
        for i in 1..=max_i {
            x_pows.push(x_pows[i - 1].mul(&gamma.0));
        }
        let mut y_pows = vec![ParamPoly::one()];
        for j in 1..=max_j {
            y_pows.push(y_pows[j - 1].mul(&gamma.1));
        }
        let mut out = ParamPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&x_pows[i as usize].mul(&y_pows[j as usize]).scale(c));
        }
        out
    }

    /// Restriction `p(0, y)` as a univariate polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly {
        let deg = self.deg_y().unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                coeffs[j as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Restriction `p(x, 0)` as a univariate polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly {
        self.swap_xy().restrict_x0()
    }

    pub fn swap_xy(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn d_dx(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((i, _), _)| *i > 0).map(
            |(&(i, j), c)| ((i - 1, j), c * Rat::from_integer(i.into())),
        ))
    }

    pub fn d_dy(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((_, j), _)| *j > 0).map(
            |(&(i, j), c)| ((i, j - 1), c * Rat::from_integer(j.into())),
        ))
    }

    /// Exact division by `x^k`, `None` if some term has a smaller `x` power.
    pub fn div_x_pow(&self, k: u32) -> Option<Self> {
        if self.x_order().map_or(true, |o| o >= k) {
            Some(Self {
                terms: self.terms.iter().map(|(&(i, j), c)| ((i - k, j), c.clone())).collect(),
            })
        } else {
            None
        }
    }

    /// Exact division by `y^k`.
    pub fn div_y_pow(&self, k: u32) -> Option<Self> {
        Some(self.swap_xy().div_x_pow(k)?.swap_xy())
    }

    /// Exact multivariate division by `d`, reducing the lex-leading term;
    /// `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (&(di, dj), dc) = d.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((&(ri, rj), rc)) = rem.terms.iter().next_back() {
            if ri < di || rj < dj {
                return None;
            }
            let qi = ri - di;
            let qj = rj - dj;
            let qc = rc / dc;
            let qterm = Self::monomial(qi, qj, qc);
            rem = rem.sub(&qterm.mul(d));
            quo = quo.add(&qterm);
        }
        Some(quo)
    }

    /// Primitive associate: integer coprime coefficients and positive
    /// coefficient on the lex-leading term.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut content: Option<Rat> = None;
        for c in self.terms.values() {
            content = Some(match content {
                None => c.clone(),
                Some(acc) => {
                    use num::Integer;
                    Rat::new(acc.numer().gcd(c.numer()), acc.denom().lcm(c.denom()))
                }
            });
        }
        let mut content = content.unwrap().abs();
        if self.terms.iter().next_back().unwrap().1.is_negative() {
            content = -content;
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c / &content)).collect(),
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut pieces: Vec<String> = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                pieces.push(a.to_string());
            }
            for (sym, e) in [("x", i), ("y", j)] {
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
