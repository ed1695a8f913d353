//! Truncated formal power series with exact coefficients.
//!
//! `Series<Rat>` is a univariate series truncated at a fixed order; nesting
//! as `Series<Series<Rat>>` gives bivariate series (outer variable s, inner
//! variable t) for the double generating functions.

use num::{One, Zero};

use super::rational::{rat_sqrt, rat_to_string, Rat};
use crate::error::{Error, Result};

/// Coefficient ring of a truncated series. `Rat` is the base case; a series
/// is itself a valid coefficient, which yields nested bivariate series.
/// Zero and one are built from a prototype so that nested coefficients can
/// carry their truncation order.
pub trait SeriesCoeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn neg_c(&self) -> Self;
    /// Division by an invertible element (recursively invertible constant
    /// term for nested series).
    fn div_c(&self, o: &Self) -> Result<Self>;
    fn scale_c(&self, r: &Rat) -> Self;
    /// Exact square root where one exists in the ring.
    fn sqrt_c(&self) -> Result<Self>;
    /// Exponential; defined when the element exponentiates inside the ring
    /// (zero for `Rat`, zero-constant-term for a nested series).
    fn exp_c(&self) -> Result<Self>;
    fn describe(&self) -> String;
}

impl SeriesCoeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn div_c(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::BadConstantTerm("division by zero".into()));
        }
        Ok(self / o)
    }
    fn scale_c(&self, r: &Rat) -> Self {
        self * r
    }
    fn sqrt_c(&self) -> Result<Self> {
        rat_sqrt(self)
    }
    fn exp_c(&self) -> Result<Self> {
        if self.is_zero() {
            Ok(Rat::one())
        } else {
            Err(Error::BadConstantTerm(format!(
                "exp of series with nonzero constant term {}",
                rat_to_string(self)
            )))
        }
    }
    fn describe(&self) -> String {
        rat_to_string(self)
    }
}

/// Formal power series truncated at a fixed order N: coefficients of
/// variable^0 .. variable^N. All ring operations truncate consistently;
/// binary operations require matching variable tags and orders.
#[derive(Clone, PartialEq)]
pub struct Series<C: SeriesCoeff> {
    var: char,
    coeffs: Vec<C>,
}

/// Bivariate series: outer variable s with inner t-series coefficients.
pub type BiSeries = Series<Series<Rat>>;

impl<C: SeriesCoeff> Series<C> {
    /// Builds from explicit coefficients (at least one), padding with zeros
    /// up to `order`.
    pub fn from_coeffs(var: char, coeffs: Vec<C>, order: usize) -> Self {
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        let z = coeffs[0].zero_like();
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, z);
        coeffs.truncate(order + 1);
        Series { var, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero_c)
    }

    fn zero_proto(&self) -> C {
        self.coeffs[0].zero_like()
    }

    fn check_compat(&self, o: &Self) {
        assert_eq!(self.var, o.var, "series variable mismatch");
        assert_eq!(self.order(), o.order(), "series order mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compat(o);
        Series {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add_c(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_compat(o);
        Series {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.sub_c(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(C::neg_c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_compat(o);
        let n = self.order();
        let mut out = vec![self.zero_proto(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_c() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out[i + j] = out[i + j].add_c(&a.mul_c(b));
            }
        }
        Series {
            var: self.var,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.scale_c(r)).collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a.mul_c(c)).collect(),
        }
    }

    /// self / o; requires an invertible constant term in o.
    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check_compat(o);
        let n = self.order();
        let b0 = &o.coeffs[0];
        if b0.is_zero_c() {
            return Err(Error::BadConstantTerm(
                "series division by zero constant term".into(),
            ));
        }
        let mut q = vec![self.zero_proto(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc.sub_c(&o.coeffs[j].mul_c(&q[k - j]));
            }
            q[k] = acc.div_c(b0)?;
        }
        Ok(Series {
            var: self.var,
            coeffs: q,
        })
    }

    /// Square root; the constant term must have an exact square root in the
    /// coefficient ring. Squaring the result reproduces the argument mod
    /// x^{N+1}.
    pub fn sqrt(&self) -> Result<Self> {
        let n = self.order();
        let s0 = self.coeffs[0].sqrt_c()?;
        let two_s0 = s0.add_c(&s0);
        if two_s0.is_zero_c() {
            return Err(Error::BadConstantTerm(
                "series sqrt needs an invertible constant term".into(),
            ));
        }
        let mut s = vec![self.zero_proto(); n + 1];
        s[0] = s0;
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub_c(&s[j].mul_c(&s[k - j]));
            }
            s[k] = acc.div_c(&two_s0)?;
        }
        Ok(Series {
            var: self.var,
            coeffs: s,
        })
    }

    /// exp(self); the constant term must itself exponentiate in the
    /// coefficient ring.
    pub fn exp(&self) -> Result<Self> {
        let n = self.order();
        let e0 = self.coeffs[0].exp_c()?;
        // g' = f' g with f shorn of its constant term
        let mut g = vec![self.zero_proto(); n + 1];
        g[0] = self.coeffs[0].one_like();
        for k in 1..=n {
            let mut acc = self.zero_proto();
            for j in 1..=k {
                let jf = Rat::from_integer((j as i64).into());
                acc = acc.add_c(&self.coeffs[j].scale_c(&jf).mul_c(&g[k - j]));
            }
            g[k] = acc.scale_c(&Rat::new(1.into(), (k as i64).into()));
        }
        Ok(Series {
            var: self.var,
            coeffs: g,
        }
        .scale_coeff(&e0))
    }

    /// self^r for rational exponent r; requires constant term one.
    pub fn pow_rat(&self, r: &Rat) -> Result<Self> {
        if self.coeffs[0] != self.coeffs[0].one_like() {
            return Err(Error::BadConstantTerm(format!(
                "rational power of series with constant term {} != 1",
                self.coeffs[0].describe()
            )));
        }
        let n = self.order();
        let mut h = vec![self.zero_proto(); n + 1];
        h[0] = self.coeffs[0].one_like();
        // m h_m = sum_{k=1..m} (k(r+1) - m) f_k h_{m-k}
        for m in 1..=n {
            let mut acc = self.zero_proto();
            for k in 1..=m {
                let w = r * Rat::from_integer((k as i64).into())
                    + Rat::from_integer((k as i64 - m as i64).into());
                acc = acc.add_c(&self.coeffs[k].scale_c(&w).mul_c(&h[m - k]));
            }
            h[m] = acc.scale_c(&Rat::new(1.into(), (m as i64).into()));
        }
        Ok(Series {
            var: self.var,
            coeffs: h,
        })
    }

    /// Divide by variable^k; the k lowest coefficients must vanish. The top
    /// k coefficients of the result are not determined by the input and are
    /// set to zero, so callers should expand with k extra orders up front.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        for j in 0..k.min(self.coeffs.len()) {
            if !self.coeffs[j].is_zero_c() {
                return Err(Error::BadConstantTerm(format!(
                    "cannot divide by {}^{}: coefficient {} is nonzero",
                    self.var, k, j
                )));
            }
        }
        let mut c: Vec<C> = self.coeffs[k.min(self.coeffs.len())..].to_vec();
        c.resize(self.coeffs.len(), self.zero_proto());
        Ok(Series {
            var: self.var,
            coeffs: c,
        })
    }

    /// Multiply by variable^k (truncating at the order).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![self.zero_proto(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + k <= n {
                c[i + k] = a.clone();
            }
        }
        Series {
            var: self.var,
            coeffs: c,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Series {
            var: self.var,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

impl Series<Rat> {
    pub fn zero(var: char, order: usize) -> Self {
        Series {
            var,
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(var: char, c: Rat, order: usize) -> Self {
        let mut s = Series::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: char, order: usize) -> Self {
        Series::constant(var, Rat::one(), order)
    }

    /// The series c * variable (zero when order is 0).
    pub fn linear(var: char, c: Rat, order: usize) -> Self {
        let mut s = Series::zero(var, order);
        if order >= 1 {
            s.coeffs[1] = c;
        }
        s
    }

    /// Builds a series from the low-degree polynomial coefficients of the
    /// series variable (e.g. 1 - 2*eta*t + t^2 for fixed rational eta).
    pub fn from_rat_coeffs(var: char, coeffs: &[Rat], order: usize) -> Self {
        let mut v: Vec<Rat> = coeffs.to_vec();
        v.resize(order + 1, Rat::zero());
        v.truncate(order + 1);
        Series { var, coeffs: v }
    }
}

impl<C: SeriesCoeff> SeriesCoeff for Series<C> {
    fn zero_like(&self) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.zero_like()).collect(),
        }
    }
    fn one_like(&self) -> Self {
        let mut s = self.zero_like();
        s.coeffs[0] = self.coeffs[0].one_like();
        s
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_c(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_c(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn div_c(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn scale_c(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn sqrt_c(&self) -> Result<Self> {
        self.sqrt()
    }
    fn exp_c(&self) -> Result<Self> {
        self.exp()
    }
    fn describe(&self) -> String {
        format!("series in {}", self.var)
    }
}

impl<C: SeriesCoeff> std::fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("({})*{}^{}", c.describe(), self.var, k))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Nested-series constructors; the inner order rides on the prototypes.
impl BiSeries {
    pub fn bi_zero(s_order: usize, t_order: usize) -> Self {
        Series {
            var: 's',
            coeffs: vec![Series::zero('t', t_order); s_order + 1],
        }
    }

    pub fn bi_constant(c: Series<Rat>, s_order: usize) -> Self {
        let mut out = Self::bi_zero(s_order, c.order());
        out.coeffs[0] = c;
        out
    }

    pub fn bi_one(s_order: usize, t_order: usize) -> Self {
        Self::bi_constant(Series::one('t', t_order), s_order)
    }

    /// The bivariate series c * s.
    pub fn bi_linear_s(c: Series<Rat>, s_order: usize) -> Self {
        let mut out = Self::bi_zero(s_order, c.order());
        if s_order >= 1 {
            out.coeffs[1] = c;
        }
        out
    }

    /// Coefficient of s^l t^n.
    pub fn bi_coeff(&self, l: usize, n: usize) -> &Rat {
        self.coeff(l).coeff(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ts(coeffs: &[(i64, i64)]) -> Series<Rat> {
        Series::from_coeffs(
            't',
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
            coeffs.len() - 1,
        )
    }

    #[test]
    fn exp_of_t() {
        let t = Series::linear('t', Rat::one(), 4);
        let e = t.exp().unwrap();
        assert_eq!(e, ts(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
    }

    #[test]
    fn geometric_series_by_division() {
        // 1/(1-t) to order 3
        let one = Series::one('t', 3);
        let den = ts(&[(1, 1), (-1, 1), (0, 1), (0, 1)]);
        let g = one.div(&den).unwrap();
        assert_eq!(g, ts(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn sqrt_matches_binomial_oracle() {
        // sqrt(1 + u) with u = t^2 (eta = 0 slice of 1 - 2 eta t + t^2):
        // binomial coefficients C(1/2,k) give 1 + t^2/2 - t^4/8
        let a = ts(&[(1, 1), (0, 1), (1, 1), (0, 1), (0, 1)]);
        let s = a.sqrt().unwrap();
        assert_eq!(s, ts(&[(1, 1), (0, 1), (1, 2), (0, 1), (-1, 8)]));
        assert_eq!(s.mul(&s), a);
    }

    #[test]
    fn sqrt_rejects_non_square_constant() {
        let a = ts(&[(2, 1), (1, 1)]);
        assert!(a.sqrt().is_err());
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let a = ts(&[(1, 1), (1, 1)]);
        assert!(a.exp().is_err());
    }

    #[test]
    fn pow_rat_agrees_with_sqrt() {
        let a = ts(&[(1, 1), (-2, 1), (1, 3), (5, 7), (0, 1), (1, 1)]);
        let r = a.pow_rat(&rat(1, 2)).unwrap();
        assert_eq!(r, a.sqrt().unwrap());
        assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn nested_bivariate_sqrt() {
        // sqrt(1 - t - 4s) as a series in s over series in t
        let t_order = 4;
        let one_minus_t = ts(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        let m4 = Series::constant('t', rat(-4, 1), t_order);
        let base = BiSeries::from_coeffs('s', vec![one_minus_t.clone(), m4], 2);
        let r = base.sqrt().unwrap();
        assert_eq!(r.mul(&r), base);
        // s^0 slice is sqrt(1-t)
        assert_eq!(r.coeff(0), &one_minus_t.sqrt().unwrap());
    }

    #[test]
    fn shift_down_requires_zero_low_coeffs() {
        let a = ts(&[(0, 1), (0, 1), (3, 1), (1, 1)]);
        let b = a.shift_down(2).unwrap();
        assert_eq!(b.coeff(0), &rat(3, 1));
        assert_eq!(b.coeff(1), &rat(1, 1));
        assert!(ts(&[(1, 1), (0, 1)]).shift_down(1).is_err());
    }
}
