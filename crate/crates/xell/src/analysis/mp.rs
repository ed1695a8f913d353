//! Thin operator-friendly wrapper around `astro_float::BigFloat` at a fixed
//! working precision, plus exact conversions from the rational types.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

use crate::exactnum::{Poly, Rat};

/// Working precision in bits (~115 decimal digits).
pub const PREC: usize = 384;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// High-precision real number at the crate working precision.
#[derive(Clone, Debug)]
pub struct Mp(pub BigFloat);

impl Mp {
    pub fn zero() -> Self {
        Mp(BigFloat::from_i64(0, PREC))
    }

    pub fn one() -> Self {
        Mp(BigFloat::from_i64(1, PREC))
    }

    pub fn from_i64(v: i64) -> Self {
        Mp(BigFloat::from_i64(v, PREC))
    }

    pub fn from_f64(v: f64) -> Self {
        Mp(BigFloat::from_f64(v, PREC))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        const _: () = assert!(astro_float::WORD_BIT_SIZE == 64);
        let (sign, digits) = n.to_u64_digits();
        if digits.is_empty() {
            return Mp::zero();
        }
        // from_words treats the words as the fraction 0.m, so the exponent
        // for an integer is the full word-buffer bit length
        let e = (digits.len() * astro_float::WORD_BIT_SIZE) as astro_float::Exponent;
        let s = match sign {
            num::bigint::Sign::Minus => Sign::Neg,
            _ => Sign::Pos,
        };
        let mut v = BigFloat::from_words(&digits, s, e);
        if v.precision().unwrap_or(0) < PREC {
            v.set_precision(PREC, RM).expect("widen precision");
        }
        Mp(v)
    }

    pub fn from_rat(r: &Rat) -> Self {
        if r.is_zero() {
            return Mp::zero();
        }
        &Mp::from_bigint(r.numer()) / &Mp::from_bigint(r.denom())
    }

    pub fn pi() -> Self {
        Mp(with_consts(|cc| cc.pi(PREC, RM)))
    }

    pub fn sqrt(&self) -> Self {
        Mp(self.0.sqrt(PREC, RM))
    }

    pub fn exp(&self) -> Self {
        Mp(with_consts(|cc| self.0.exp(PREC, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        Mp(with_consts(|cc| self.0.ln(PREC, RM, cc)))
    }

    /// self^e for real exponent (self > 0).
    pub fn pow(&self, e: &Mp) -> Self {
        Mp(with_consts(|cc| self.0.pow(&e.0, PREC, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Mp(self.0.powi(n, PREC, RM))
    }

    pub fn abs(&self) -> Self {
        let mut v = self.0.clone();
        v.set_sign(Sign::Pos);
        Mp(v)
    }

    pub fn recip(&self) -> Self {
        Mp(self.0.reciprocal(PREC, RM))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap();
        // value = 0.mantissa * 2^exp; use the top 64 mantissa bits
        let m = top as f64 / 2f64.powi(64);
        let v = m * 2f64.powf(exp as f64);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal string with the given number of significant digits.
    pub fn to_decimal_string(&self, sig_digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        if self.0.is_nan() || self.0.is_inf() {
            return format!("{:?}", self.0);
        }
        // digits in base 10 from the radix conversion
        let (sign, mantissa_digits, exp10) = with_consts(|cc| {
            let conv = self
                .0
                .convert_to_radix(astro_float::Radix::Dec, RM, cc)
                .expect("radix conversion");
            conv
        });
        let mut digits: Vec<u8> = mantissa_digits;
        digits.truncate(sig_digits + 1);
        // round the last digit away
        if digits.len() == sig_digits + 1 {
            let last = digits.pop().unwrap();
            if last >= 5 {
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        }
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        let body: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        let s = if sign == Sign::Neg { "-" } else { "" };
        format!("{s}0.{body}e{exp10}")
    }

    pub fn cmp_abs(&self, other: &Mp) -> Ordering {
        match self.0.abs_cmp(&other.0) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl Add for &Mp {
    type Output = Mp;
    fn add(self, rhs: &Mp) -> Mp {
        Mp(self.0.add(&rhs.0, PREC, RM))
    }
}

impl Sub for &Mp {
    type Output = Mp;
    fn sub(self, rhs: &Mp) -> Mp {
        Mp(self.0.sub(&rhs.0, PREC, RM))
    }
}

impl Mul for &Mp {
    type Output = Mp;
    fn mul(self, rhs: &Mp) -> Mp {
        Mp(self.0.mul(&rhs.0, PREC, RM))
    }
}

impl Div for &Mp {
    type Output = Mp;
    fn div(self, rhs: &Mp) -> Mp {
        Mp(self.0.div(&rhs.0, PREC, RM))
    }
}

impl Neg for &Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(self.0.clone().neg())
    }
}

impl PartialEq for Mp {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|v| match v {
            x if x < 0 => Ordering::Less,
            x if x > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    }
}

/// Rational to f64 (best effort; used only for tolerances and reporting).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact-coefficient Horner evaluation of a polynomial at an Mp point.
pub fn poly_eval_mp(p: &Poly, x: &Mp) -> Mp {
    let mut acc = Mp::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &Mp::from_rat(c);
    }
    acc
}

/// Relative difference |a-b| / max(|a|, |b|, floor).
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn bigint_conversion_exact() {
        let n: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let m = Mp::from_bigint(&n);
        let back = m.to_decimal_string(39);
        assert!(back.starts_with("0.123456789012345678901234567890123456789"));
    }

    #[test]
    fn rational_arithmetic_round_trip() {
        let x = Mp::from_rat(&rat(21, 4));
        assert!((x.to_f64() - 5.25).abs() < 1e-15);
        let y = &x - &Mp::from_f64(5.25);
        assert!(y.is_zero());
    }

    #[test]
    fn sqrt_pi_value() {
        let s = Mp::pi().sqrt();
        assert!((s.to_f64() - 1.7724538509055160273).abs() < 1e-15);
    }

    #[test]
    fn poly_eval_matches_exact() {
        let p = Poly::from_i64(&[1, -2, 3]);
        let v = poly_eval_mp(&p, &Mp::from_i64(2));
        assert!((v.to_f64() - 9.0).abs() < 1e-14);
    }
}
