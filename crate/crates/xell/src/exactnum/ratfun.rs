//! Reduced rational functions in eta.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::rational::Rat;

/// num/den with den monic and gcd(num, den) = 1. Operator outputs live here
/// until exact divisibility back to a polynomial is established.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.divexact(&g).expect("gcd divides numerator");
        let den = den.divexact(&g).expect("gcd divides denominator");
        let lc = den.leading_coeff();
        RationalFunction {
            num: num.scale(&lc.recip()),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(p) iff the reduced denominator is 1.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.degree() == Some(0) {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        RationalFunction {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Derivative (num' den - num den') / den^2, reduced.
    pub fn derive(&self) -> Self {
        let n = &(&self.num.derive() * &self.den) - &(&self.num * &self.den.derive());
        RationalFunction::new(n, &self.den * &self.den)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn reduction_is_canonical() {
        // (2x^2 - 2) / (4x - 4) reduces to (x + 1)/2 with monic denominator
        let r = RationalFunction::new(Poly::from_i64(&[-2, 0, 2]), Poly::from_i64(&[-4, 4]));
        assert_eq!(r.den(), &Poly::one());
        assert_eq!(r.num(), &Poly::new(vec![rat(1, 2), rat(1, 2)]));
        assert!(r.as_poly().is_some());
    }

    #[test]
    fn derive_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RationalFunction::new(Poly::one(), Poly::eta());
        let d = r.derive();
        assert_eq!(d.num(), &Poly::from_i64(&[-1]));
        assert_eq!(d.den(), &Poly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn arithmetic() {
        let x = RationalFunction::from_poly(Poly::eta());
        let inv = RationalFunction::new(Poly::one(), Poly::eta());
        let prod = &x * &inv;
        assert_eq!(prod.as_poly().unwrap(), Poly::one());
        let s = &x + &inv;
        assert_eq!(s.num(), &Poly::from_i64(&[1, 0, 1]));
    }
}
