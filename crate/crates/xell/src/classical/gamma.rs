//! Symbolic gamma-function products with rational arguments.
//!
//! Norm constants are rational multiples of products Г(a1)...Г(ak) /
//! Г(b1)...Г(bm). Arguments are normalized into (0,1] by the functional
//! equation, which makes ratios of such products exact rationals whenever
//! the arguments differ by integers (always the case here). Float values
//! come from a Spouge approximation evaluated in high precision.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::analysis::mp::Mp;
use crate::exactnum::{rat, rat_to_string, Rat};

/// coeff * prod Gamma(arg)^exp with all args normalized into (0,1], arg != 1.
/// The zero product (coeff = 0) is allowed and absorbs everything.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaProduct {
    coeff: Rat,
    factors: BTreeMap<Rat, i64>,
}

impl GammaProduct {
    pub fn one() -> Self {
        GammaProduct {
            coeff: Rat::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        GammaProduct {
            coeff: Rat::zero(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        GammaProduct {
            coeff: r.clone(),
            factors: BTreeMap::new(),
        }
    }

    /// Gamma(arg) for rational arg that is not a pole (zero or a negative
    /// integer).
    pub fn gamma(arg: &Rat) -> Self {
        let mut p = GammaProduct::one();
        p.push_gamma(arg, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    fn push_gamma(&mut self, arg: &Rat, exp: i64) {
        assert!(
            !(arg.is_integer() && !arg.is_positive()),
            "gamma pole at {}",
            rat_to_string(arg)
        );
        let one = Rat::one();
        let mut a = arg.clone();
        // Gamma(a) = (a-1) Gamma(a-1) walks a down into (0,1];
        // Gamma(a) = Gamma(a+1)/a walks it up.
        while a > one {
            a -= &one;
            self.coeff *= pow_i(&a, exp);
        }
        while !a.is_positive() {
            self.coeff *= pow_i(&a, -exp);
            a += &one;
        }
        if a == one {
            return;
        }
        let e = self.factors.entry(a).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = self.clone();
        out.coeff *= r;
        if out.coeff.is_zero() {
            out.factors.clear();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return GammaProduct::zero();
        }
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        for (a, e) in &other.factors {
            let v = out.factors.entry(a.clone()).or_insert(0);
            *v += e;
        }
        out.factors.retain(|_, v| *v != 0);
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero gamma product");
        if self.is_zero() {
            return GammaProduct::zero();
        }
        let mut out = self.clone();
        out.coeff /= &other.coeff;
        for (a, e) in &other.factors {
            let v = out.factors.entry(a.clone()).or_insert(0);
            *v -= e;
        }
        out.factors.retain(|_, v| *v != 0);
        out
    }

    /// self / other as an exact rational when both share the same normalized
    /// gamma factors; None otherwise.
    pub fn ratio_to(&self, other: &Self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if other.is_zero() || self.factors != other.factors {
            return None;
        }
        Some(&self.coeff / &other.coeff)
    }

    /// Exact sum when both terms share the same gamma factors.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.factors != other.factors {
            return None;
        }
        let coeff = &self.coeff + &other.coeff;
        Some(if coeff.is_zero() {
            GammaProduct::zero()
        } else {
            GammaProduct {
                coeff,
                factors: self.factors.clone(),
            }
        })
    }

    pub fn eval(&self) -> Mp {
        let mut acc = Mp::from_rat(&self.coeff);
        for (a, e) in &self.factors {
            let g = gamma_mp_unit(a);
            let p = g.powi(e.unsigned_abs() as usize);
            if *e > 0 {
                acc = &acc * &p;
            } else {
                acc = &acc / &p;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.eval().to_f64()
    }
}

fn pow_i(r: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![rat_to_string(&self.coeff)];
        let half = rat(1, 2);
        for (a, e) in &self.factors {
            if *a == half {
                let pis = e.div_euclid(2);
                let root = e.rem_euclid(2);
                if pis != 0 {
                    parts.push(if pis == 1 {
                        "pi".to_string()
                    } else {
                        format!("pi^{pis}")
                    });
                }
                if root == 1 {
                    parts.push("sqrt(pi)".to_string());
                }
            } else if *e == 1 {
                parts.push(format!("gamma({})", rat_to_string(a)));
            } else {
                parts.push(format!("gamma({})^{}", rat_to_string(a), e));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Spouge parameter: error is roughly (2*pi)^(-A-1/2), far below the working
/// precision's ~115 digits is not needed; A = 121 gives ~96 digits.
const SPOUGE_A: usize = 121;

thread_local! {
    static SPOUGE_COEFFS: RefCell<Option<Vec<Mp>>> = const { RefCell::new(None) };
}

fn spouge_coeffs<T>(f: impl FnOnce(&[Mp]) -> T) -> T {
    SPOUGE_COEFFS.with(|cell| {
        let mut slot = cell.borrow_mut();
        if slot.is_none() {
            let a = SPOUGE_A;
            let mut c = Vec::with_capacity(a);
            // c[0] = sqrt(2 pi)
            c.push((&Mp::pi() + &Mp::pi()).sqrt());
            let mut fact = Mp::one();
            for k in 1..a {
                if k > 1 {
                    fact = &fact * &Mp::from_i64(k as i64 - 1);
                }
                let amk = Mp::from_i64((a - k) as i64);
                let e1 = amk.ln();
                let khalf = &Mp::from_i64(2 * k as i64 - 1) / &Mp::from_i64(2);
                let ck = &(&(&khalf * &e1) + &amk).exp() / &fact;
                c.push(if k % 2 == 1 { ck } else { -&ck });
            }
            *slot = Some(c);
        }
        f(slot.as_ref().unwrap())
    })
}

/// Gamma at a rational argument in (0,1], via Gamma(z) = Gamma(z+1)/z and
/// the Spouge series for Gamma(z+1).
fn gamma_mp_unit(z: &Rat) -> Mp {
    debug_assert!(z.is_positive() && *z <= Rat::one());
    let zm = Mp::from_rat(z);
    let a = Mp::from_i64(SPOUGE_A as i64);
    let zpa = &zm + &a;
    let sum = spouge_coeffs(|c| {
        let mut s = c[0].clone();
        for (k, ck) in c.iter().enumerate().skip(1) {
            s = &s + &(ck / &(&zm + &Mp::from_i64(k as i64)));
        }
        s
    });
    // Gamma(z+1) = (z+a)^(z+1/2) e^-(z+a) * sum
    let zph = &zm + &(&Mp::one() / &Mp::from_i64(2));
    let lead = (&(&zph * &zpa.ln()) - &zpa).exp();
    &(&lead * &sum) / &zm
}

/// Gamma at any non-pole positive rational, high precision.
pub fn gamma_mp(z: &Rat) -> Mp {
    GammaProduct::gamma(z).eval()
}

/// Convenience f64 gamma for reporting.
pub fn gamma_f64(z: &Rat) -> f64 {
    gamma_mp(z).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        // Gamma(5) = 24
        assert!((gamma_f64(&rat(5, 1)) - 24.0).abs() < 1e-12);
        // Gamma(1/2) = sqrt(pi)
        assert!((gamma_f64(&rat(1, 2)) - 1.7724538509055160273).abs() < 1e-14);
        // Gamma(7/2) = 15 sqrt(pi) / 8
        let expect = 15.0 * 1.7724538509055160273 / 8.0;
        assert!((gamma_f64(&rat(7, 2)) - expect).abs() < 1e-12);
    }

    #[test]
    fn high_precision_at_least_50_digits() {
        // Reflection identity Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3), with the
        // right side from astro-float's own pi and sqrt. Agreement far below
        // 1e-50 relative certifies the evaluator precision.
        let lhs = &gamma_mp(&rat(1, 3)) * &gamma_mp(&rat(2, 3));
        let pi = Mp::pi();
        let rhs = &(&pi + &pi) / &Mp::from_i64(3).sqrt();
        let rel = (&(&lhs - &rhs) / &rhs).abs();
        assert!(rel < Mp::from_f64(1e-60), "relative error {}", rel.to_f64());
    }

    #[test]
    fn reflection_style_cross_check() {
        // Gamma(1/4) Gamma(3/4) = pi / sin(pi/4) = pi sqrt(2)
        let p = GammaProduct::gamma(&rat(1, 4)).mul(&GammaProduct::gamma(&rat(3, 4)));
        let v = p.to_f64();
        let expect = std::f64::consts::PI * std::f64::consts::SQRT_2;
        assert!((v - expect).abs() < 1e-12, "{v} vs {expect}");
    }

    #[test]
    fn ratio_and_sum_are_exact() {
        // Gamma(7/2) / Gamma(3/2) = 15/4
        let a = GammaProduct::gamma(&rat(7, 2));
        let b = GammaProduct::gamma(&rat(3, 2));
        assert_eq!(a.ratio_to(&b).unwrap(), rat(15, 4));
        // Gamma(7/2)/2 + Gamma(5/2) = (15/16 + 3/4) sqrt(pi)
        let s = a.scale(&rat(1, 2))
            .try_add(&GammaProduct::gamma(&rat(5, 2)))
            .unwrap();
        assert_eq!(s.ratio_to(&GammaProduct::gamma(&rat(1, 2))).unwrap(), rat(27, 16));
    }

    #[test]
    fn display_extracts_pi_powers() {
        let p = GammaProduct::gamma(&rat(7, 2)).scale(&rat(7, 5)).scale(&rat(1, 2));
        assert_eq!(p.to_string(), "21/16*sqrt(pi)");
        let q = GammaProduct::gamma(&rat(3, 2)).mul(&GammaProduct::gamma(&rat(3, 2)));
        assert_eq!(q.to_string(), "1/4*pi");
    }
}
