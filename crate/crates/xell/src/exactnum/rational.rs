//! Helpers around `num::BigRational`, the scalar type of the whole crate.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Exact rational scalar. Always stored reduced with positive denominator
/// (`num::BigRational` maintains both invariants on construction).
pub type Rat = num::BigRational;

/// Shorthand for small rationals: `rat(3, 2)` is 3/2.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"` or `"num"`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

/// Formats as `"num/den"`, or `"num"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational square root, or an error when the argument is not a
/// perfect square of a rational.
pub fn rat_sqrt(r: &Rat) -> Result<Rat> {
    if r.is_negative() {
        return Err(Error::BadConstantTerm(format!(
            "sqrt of negative rational {}",
            rat_to_string(r)
        )));
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Ok(Rat::new(sn, sd))
    } else {
        Err(Error::BadConstantTerm(format!(
            "{} is not a perfect rational square",
            rat_to_string(r)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-7", "0", "21/4", "-5/3"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_to_string(&rat_from_str("4/2").unwrap()), "2");
        assert_eq!(rat_to_string(&rat_from_str("1/-2").unwrap()), "-1/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn sqrt_exact_or_error() {
        assert_eq!(rat_sqrt(&rat(9, 4)).unwrap(), rat(3, 2));
        assert_eq!(rat_sqrt(&rat(0, 1)).unwrap(), rat(0, 1));
        assert!(rat_sqrt(&rat(2, 1)).is_err());
        assert!(rat_sqrt(&rat(-1, 1)).is_err());
    }
}
