//! Gauss quadrature for the base classical weights in high precision.
//!
//! Recurrence coefficients of the orthogonal polynomials are exact
//! rationals; nodes come from Sturm bisection on the Jacobi matrix in f64
//! followed by Newton refinement at working precision; weights from the
//! reciprocal Christoffel sums. The hDPT weight on (1, inf) maps to a Beta
//! weight on (0,1) through v = (eta-1)/(eta+1), with a degree fold
//! (1-v)^N so polynomial integrands up to degree N transform to
//! polynomials again.

use num::{One, Signed, ToPrimitive, Zero};

use crate::classical::gamma::GammaProduct;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Poly, Rat};
use crate::xcore::{Family, Lambda};

use super::mp::{poly_eval_mp, rat_to_f64, Mp};

/// Monic three-term recurrence data: p_{k+1} = (x - a_k) p_k - b2_k p_{k-1}
/// with b2_0 unused.
struct MonicRecurrence {
    a: Vec<Rat>,
    b2: Vec<Rat>,
}

/// x^alpha e^-x on (0, inf).
fn laguerre_recurrence(alpha: &Rat, m: usize) -> MonicRecurrence {
    let mut a = Vec::with_capacity(m);
    let mut b2 = Vec::with_capacity(m);
    for k in 0..m {
        let kf = Rat::from_integer((k as i64).into());
        a.push(&kf + &kf + alpha + Rat::one());
        b2.push(&kf * (&kf + alpha));
    }
    MonicRecurrence { a, b2 }
}

/// (1-x)^alpha (1+x)^beta on (-1, 1).
fn jacobi_recurrence(alpha: &Rat, beta: &Rat, m: usize) -> MonicRecurrence {
    let mut a = Vec::with_capacity(m);
    let mut b2 = Vec::with_capacity(m);
    let apb = alpha + beta;
    for k in 0..m {
        let kf = Rat::from_integer((k as i64).into());
        let s = &kf + &kf + &apb;
        if k == 0 {
            a.push((beta - alpha) / (&apb + rat(2, 1)));
            b2.push(Rat::zero());
        } else {
            a.push((beta * beta - alpha * alpha) / (&s * (&s + rat(2, 1))));
            if k == 1 {
                // cancelled form, safe at alpha + beta + 1 = 0
                b2.push(
                    rat(4, 1) * (alpha + Rat::one()) * (beta + Rat::one())
                        / ((&apb + rat(2, 1)) * (&apb + rat(2, 1)) * (&apb + rat(3, 1))),
                );
            } else {
                let num = rat(4, 1) * &kf * (&kf + alpha) * (&kf + beta) * (&kf + &apb);
                let den = &s * &s * ((&s + Rat::one()) * (&s - Rat::one()));
                b2.push(num / den);
            }
        }
    }
    MonicRecurrence { a, b2 }
}

/// Eigenvalue count below x for the symmetric tridiagonal matrix, via the
/// LDL^T sign recurrence.
fn count_below(a: &[f64], b2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for k in 0..a.len() {
        d = if k == 0 {
            a[0] - x
        } else {
            (a[k] - x) - b2[k] / d
        };
        if d == 0.0 {
            d = -1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of the Jacobi matrix by bisection, f64 accuracy.
fn nodes_f64(rec: &MonicRecurrence) -> Vec<f64> {
    let m = rec.a.len();
    let a: Vec<f64> = rec.a.iter().map(rat_to_f64).collect();
    let b2: Vec<f64> = rec.b2.iter().map(rat_to_f64).collect();
    let b: Vec<f64> = b2.iter().map(|v| v.abs().sqrt()).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..m {
        let r = if k == 0 { 0.0 } else { b[k] } + if k + 1 < m { b[k + 1] } else { 0.0 };
        lo = lo.min(a[k] - r);
        hi = hi.max(a[k] + r);
    }
    let width = (hi - lo).max(1e-30);
    let (lo, hi) = (lo - 1e-12 * width - 1e-30, hi + 1e-12 * width + 1e-30);
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        // eigenvalue with exactly i below it
        let (mut x0, mut x1) = (lo, hi);
        for _ in 0..110 {
            let mid = 0.5 * (x0 + x1);
            if count_below(&a, &b2, mid) <= i {
                x0 = mid;
            } else {
                x1 = mid;
            }
            if x1 - x0 <= f64::EPSILON * x1.abs().max(x0.abs()).max(1e-10) {
                break;
            }
        }
        out.push(0.5 * (x0 + x1));
    }
    out
}

/// Newton refinement of a simple root of the monic polynomial given by the
/// recurrence, at working precision.
fn refine_node(rec: &MonicRecurrence, a_mp: &[Mp], b2_mp: &[Mp], x0: f64) -> Mp {
    let m = rec.a.len();
    let mut x = Mp::from_f64(x0);
    for _ in 0..4 {
        // p_m and p_m' by simultaneous recurrence
        let mut pkm1 = Mp::one();
        let mut pk = &x - &a_mp[0];
        let mut dkm1 = Mp::zero();
        let mut dk = Mp::one();
        for k in 1..m {
            let xa = &x - &a_mp[k];
            let pnext = &(&xa * &pk) - &(&b2_mp[k] * &pkm1);
            let dnext = &(&pk + &(&xa * &dk)) - &(&b2_mp[k] * &dkm1);
            pkm1 = pk;
            pk = pnext;
            dkm1 = dk;
            dk = dnext;
        }
        if dk.is_zero() {
            break;
        }
        x = &x - &(&pk / &dk);
    }
    x
}

/// Christoffel weight (normalized): 1 / sum_{j<m} q_j(x)^2 with q_j
/// orthonormal for the probability-normalized measure.
fn normalized_weight(a_mp: &[Mp], beta_mp: &[Mp], x: &Mp) -> Mp {
    let m = a_mp.len();
    let mut sum = Mp::one(); // q_0 = 1
    let mut qkm1 = Mp::one();
    let mut qk = &(x - &a_mp[0]) / &beta_mp[1.min(m - 1)];
    if m > 1 {
        sum = &sum + &(&qk * &qk);
    }
    for k in 1..m.saturating_sub(1) {
        let qnext = &(&(&(x - &a_mp[k]) * &qk) - &(&beta_mp[k] * &qkm1)) / &beta_mp[k + 1];
        qkm1 = qk;
        qk = qnext;
        sum = &sum + &(&qk * &qk);
    }
    sum.recip()
}

/// A Gauss rule for a base classical weight: integrates f against
/// W(eta; lambda_eff) as sum w_i f(eta_i). For hDPT the weights absorb the
/// (1-v)^fold factor, and polynomial exactness holds for degrees <= fold.
#[derive(Clone)]
pub struct QuadratureRule {
    pub family: Family,
    pub lambda_eff: Lambda,
    pub nodes: Vec<Mp>,
    pub weights: Vec<Mp>,
    /// hDPT degree fold N; 0 for the other families.
    pub fold: usize,
}

impl QuadratureRule {
    /// Builds an m-node rule for the classical weight at lambda_eff.
    /// `fold` is the maximum polynomial degree the rule must integrate for
    /// the hDPT transform (ignored for L/J).
    pub fn classical(family: Family, lambda_eff: &Lambda, m: usize, fold: usize) -> Result<Self> {
        assert!(m >= 1);
        let half = rat(1, 2);
        let (rec, mu0, fold) = match family {
            Family::L1 | Family::L2 => {
                let alpha = &lambda_eff.g - &half;
                if alpha <= -Rat::one() {
                    return Err(Error::InvalidParams(
                        "Laguerre weight exponent must exceed -1".into(),
                    ));
                }
                let mu0 = GammaProduct::gamma(&(&alpha + Rat::one())).scale(&half);
                (laguerre_recurrence(&alpha, m), mu0, 0)
            }
            Family::J1 | Family::J2 => {
                let a = &lambda_eff.g - &half;
                let b = lambda_eff.h() - &half;
                if a <= -Rat::one() || b <= -Rat::one() {
                    return Err(Error::InvalidParams(
                        "Jacobi weight exponents must exceed -1".into(),
                    ));
                }
                // mu0 = Gamma(g+1/2)Gamma(h+1/2) / (2 Gamma(g+h+1))
                let mu0 = GammaProduct::gamma(&(&lambda_eff.g + &half))
                    .mul(&GammaProduct::gamma(&(lambda_eff.h() + &half)))
                    .div(&GammaProduct::gamma(
                        &(&lambda_eff.g + lambda_eff.h() + Rat::one()),
                    ))
                    .scale(&half);
                (jacobi_recurrence(&a, &b, m), mu0, 0)
            }
            Family::Hdpt => {
                // v = (eta-1)/(eta+1): weight becomes
                // (1/2) v^(g-1/2) (1-v)^(h-g-1) dv on (0,1); fold N shifts the
                // (1-v) exponent down by N
                let av = &lambda_eff.g - &half;
                let bv0 = lambda_eff.h() - &lambda_eff.g - Rat::one();
                let nf = Rat::from_integer((fold as i64).into());
                let bv = &bv0 - &nf;
                if av <= -Rat::one() || bv <= -Rat::one() {
                    return Err(Error::InvalidParams(format!(
                        "hDPT transformed exponents out of range (fold {fold} too deep: {} , {})",
                        rat_to_f64(&av),
                        rat_to_f64(&bv),
                    )));
                }
                // measure mass on (0,1) including the 1/2 prefactor
                let mass = GammaProduct::gamma(&(&av + Rat::one()))
                    .mul(&GammaProduct::gamma(&(&bv + Rat::one())))
                    .div(&GammaProduct::gamma(&(&av + &bv + rat(2, 1))))
                    .scale(&half);
                // standard Jacobi on (-1,1) with x = 2v - 1:
                // (1-x)^bv (1+x)^av
                (jacobi_recurrence(&bv, &av, m), mass, fold)
            }
        };

        let a_mp: Vec<Mp> = rec.a.iter().map(Mp::from_rat).collect();
        let b2_mp: Vec<Mp> = rec.b2.iter().map(Mp::from_rat).collect();
        let mut beta_mp: Vec<Mp> = vec![Mp::zero()];
        for k in 1..m {
            beta_mp.push(b2_mp[k].sqrt());
        }
        let mu0_mp = mu0.eval();

        let raw = nodes_f64(&rec);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let one = Mp::one();
        let two = Mp::from_i64(2);
        for x0 in raw {
            let x = refine_node(&rec, &a_mp, &b2_mp, x0);
            let w_norm = if m == 1 {
                Mp::one()
            } else {
                normalized_weight(&a_mp, &beta_mp, &x)
            };
            match family {
                Family::Hdpt => {
                    let v = &(&x + &one) / &two;
                    let eta = &(&one + &v) / &(&one - &v);
                    let omv = &one - &v;
                    let w = &(&mu0_mp * &w_norm) * &omv.powi(fold);
                    nodes.push(eta);
                    weights.push(w);
                }
                _ => {
                    nodes.push(x);
                    weights.push(&mu0_mp * &w_norm);
                }
            }
        }
        Ok(QuadratureRule {
            family,
            lambda_eff: lambda_eff.clone(),
            nodes,
            weights,
            fold,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(&Mp) -> Mp) -> Mp {
        let mut acc = Mp::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = &acc + &(w * &f(x));
        }
        acc
    }

    pub fn integrate_poly(&self, p: &Poly) -> Mp {
        self.integrate(|x| poly_eval_mp(p, x))
    }

    /// Largest polynomial degree the rule integrates exactly.
    pub fn max_exact_degree(&self) -> usize {
        match self.family {
            Family::Hdpt => self.fold.min(2 * self.len() - 1),
            _ => 2 * self.len() - 1,
        }
    }

    /// Symbolic moment of the validation basis member of degree k:
    /// eta^k (L), (1+eta)^k (J), (eta-1)^k (hDPT). None when the moment is
    /// not finite (possible for hDPT only).
    pub fn symbolic_moment(&self, k: usize) -> Option<GammaProduct> {
        let half = rat(1, 2);
        let kf = Rat::from_integer((k as i64).into());
        let mut pow2 = Rat::one();
        for _ in 1..k {
            pow2 *= rat(2, 1);
        }
        // 2^(k-1); for k = 0 this is 1/2 handled below
        if k == 0 {
            pow2 = half.clone();
        }
        match self.family {
            Family::L1 | Family::L2 => {
                // (1/2) Gamma(alpha + k + 1)
                let alpha = &self.lambda_eff.g - &half;
                Some(GammaProduct::gamma(&(&alpha + &kf + Rat::one())).scale(&rat(1, 2)))
            }
            Family::J1 | Family::J2 => {
                // 2^(k-1) G(g+1/2) G(h+k+1/2) / G(g+h+k+1)
                let g = &self.lambda_eff.g;
                let h = self.lambda_eff.h();
                Some(
                    GammaProduct::gamma(&(g + &half))
                        .mul(&GammaProduct::gamma(&(h + &kf + &half)))
                        .div(&GammaProduct::gamma(&(g + h + &kf + Rat::one())))
                        .scale(&pow2),
                )
            }
            Family::Hdpt => {
                // 2^(k-1) G(av+k+1) G(bv0-k+1) / G(av+bv0+2), finite for
                // k < bv0 + 1
                let av = &self.lambda_eff.g - &half;
                let bv0 = self.lambda_eff.h() - &self.lambda_eff.g - Rat::one();
                if &bv0 - &kf + Rat::one() <= Rat::zero() {
                    return None;
                }
                Some(
                    GammaProduct::gamma(&(&av + &kf + Rat::one()))
                        .mul(&GammaProduct::gamma(&(&bv0 - &kf + Rat::one())))
                        .div(&GammaProduct::gamma(&(&av + &bv0 + rat(2, 1))))
                        .scale(&pow2),
                )
            }
        }
    }

    /// The validation basis member of degree k.
    pub fn moment_basis(&self, k: usize) -> Poly {
        match self.family {
            Family::L1 | Family::L2 => Poly::monomial(Rat::one(), k),
            Family::J1 | Family::J2 => Poly::from_i64(&[1, 1]).pow(k),
            Family::Hdpt => Poly::from_i64(&[-1, 1]).pow(k),
        }
    }

    /// Maximum relative error over the symbolic moments of all exactly
    /// integrable degrees (the whole basis spans those polynomials).
    pub fn validate_moments(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let step = match self.family {
            Family::L1 | Family::L2 => Poly::eta(),
            Family::J1 | Family::J2 => Poly::from_i64(&[1, 1]),
            Family::Hdpt => Poly::from_i64(&[-1, 1]),
        };
        // evaluate the basis at all nodes incrementally
        let mut values: Vec<Mp> = self.nodes.iter().map(|_| Mp::one()).collect();
        let step_vals: Vec<Mp> = self.nodes.iter().map(|x| poly_eval_mp(&step, x)).collect();
        for k in 0..=self.max_exact_degree() {
            if k > 0 {
                for (v, s) in values.iter_mut().zip(&step_vals) {
                    *v = &*v * s;
                }
            }
            let Some(sym) = self.symbolic_moment(k) else {
                break;
            };
            let mut acc = Mp::zero();
            for (v, w) in values.iter().zip(&self.weights) {
                acc = &acc + &(w * v);
            }
            let expect = sym.eval();
            let rel = (&(&acc - &expect) / &expect).abs().to_f64().abs();
            worst = worst.max(rel);
        }
        worst
    }
}

/// Converts a rational to f64 by way of the crate helper (re-exported for
/// the sibling modules).
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn laguerre_rule_moments() {
        let lam = Lambda::l(rat(3, 2)); // weight eta e^-eta / 2
        for m in [8usize, 40] {
            let rule = QuadratureRule::classical(Family::L1, &lam, m, 0).unwrap();
            let worst = rule.validate_moments();
            assert!(worst < 1e-12, "m={m} worst {worst:e}");
        }
    }

    #[test]
    fn jacobi_rule_moments() {
        let lam = Lambda::j(rat(1, 1), rat(5, 2));
        for m in [8usize, 40] {
            let rule = QuadratureRule::classical(Family::J2, &lam, m, 0).unwrap();
            let worst = rule.validate_moments();
            assert!(worst < 1e-12, "m={m} worst {worst:e}");
        }
    }

    #[test]
    fn chebyshev_corner_case() {
        // alpha = beta = -1/2 stresses the k = 1 coefficient
        let lam = Lambda::j(rat(0, 1), rat(0, 1));
        let rule = QuadratureRule::classical(Family::J1, &lam, 12, 0).unwrap();
        assert!(rule.validate_moments() < 1e-12);
    }

    #[test]
    fn hdpt_rule_moments() {
        // g = 1, h = 16 at lambda_eff = lambda + ell delta with ell = 1
        let lam = Lambda::j(rat(2, 1), rat(15, 1));
        let rule = QuadratureRule::classical(Family::Hdpt, &lam, 60, 10).unwrap();
        let worst = rule.validate_moments();
        assert!(worst < 1e-12, "worst {worst:e}");
        // total mass equals the closed-form norm at n = 0 denominator side:
        // sum of weights = mu0
        let mass = rule.integrate(|_| Mp::one());
        let half = rat(1, 2);
        let expect = GammaProduct::gamma(&(&lam.g + &half))
            .mul(&GammaProduct::gamma(&(lam.h() - &lam.g)))
            .div(&GammaProduct::gamma(&(lam.h() + &half)))
            .scale(&half)
            .eval();
        let rel = (&(&mass - &expect) / &expect).abs().to_f64();
        assert!(rel < 1e-25, "mass off by {rel:e}");
    }

    #[test]
    fn big_laguerre_rule_high_degree_moments() {
        // the acceptance gate uses 200- and 400-node rules; degree-799
        // moments overflow f64 but not the working precision
        let lam = Lambda::l(rat(1, 1));
        let rule = QuadratureRule::classical(Family::L1, &lam, 200, 0).unwrap();
        let worst = rule.validate_moments();
        assert!(worst < 1e-12, "worst {worst:e}");
    }
}
