use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (num's `BigRational` maintains both invariants).
pub type Rat = BigRational;

/// Shorthand for small integer constants.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact test for membership of a rational in the squares of the rationals.
///
/// In lowest terms a/b with b > 0 this holds iff a >= 0 and both a and b
/// are perfect squares.
pub fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &(&root * &root) == n
}

/// Parses `a` or `a/b` with optional sign into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let bad = || Error::Validation(format!("not a rational number: `{text}`"));
    let s = text.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_s.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_detection() {
        assert!(is_rational_square(&Rat::new(BigInt::from(9), BigInt::from(4))));
        assert!(is_rational_square(&rat(0)));
        assert!(is_rational_square(&rat(49)));
        assert!(!is_rational_square(&rat(-4)));
        assert!(!is_rational_square(&Rat::new(BigInt::from(2), BigInt::from(1))));
        assert!(!is_rational_square(&Rat::new(BigInt::from(9), BigInt::from(2))));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), Rat::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), Rat::new(BigInt::from(2), BigInt::from(3)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
