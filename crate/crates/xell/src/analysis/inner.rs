//! Inner products under the deformed weight, orthogonality and norm
//! verification, the integration formula and Gram-Schmidt construction.
//!
//! Quadrature always uses the nodes of the base classical weight at
//! lambda + ell delta; the 1/xi^2 ratio rides along as a smooth integrand
//! factor, which is valid because xi is root-free on the domain. The
//! convergence gate doubles the node count and demands 1e-9 agreement.

use num::{One, Signed, Zero};

use crate::classical::gamma::GammaProduct;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Poly, Rat};
use crate::report::VerificationReport;
use crate::xcore::{h_classical, h_xell, weight_factor, xi_map, xpoly, Family, FamilyTable, Lambda, ParamSet};

use super::mp::{poly_eval_mp, rel_diff, Mp};
use super::quadrature::QuadratureRule;

pub const BASE_NODES: usize = 200;
pub const CONVERGENCE_REL: f64 = 1e-9;

/// A pair of rules (m and 2m nodes) for the deformed inner product of one
/// parameter set, plus the divisor xi.
pub struct InnerProductRule {
    pub params: ParamSet,
    pub divisor: Poly,
    rules: Vec<QuadratureRule>,
}

impl InnerProductRule {
    pub fn new(params: &ParamSet, nodes: usize) -> Result<Self> {
        let (_, divisor) = weight_factor(params)?;
        let lam_eff = params.lambda_at(params.ell as i64);
        let fold = hdpt_fold(params);
        let rules = vec![
            QuadratureRule::classical(params.family, &lam_eff, nodes, fold)?,
            QuadratureRule::classical(params.family, &lam_eff, 2 * nodes, fold)?,
        ];
        Ok(InnerProductRule {
            params: params.clone(),
            divisor,
            rules,
        })
    }

    fn eval_pair(&self, p: &Poly, q: &Poly) -> (Mp, Mp) {
        let f = |x: &Mp| {
            let xv = poly_eval_mp(&self.divisor, x);
            &(&poly_eval_mp(p, x) * &poly_eval_mp(q, x)) / &(&xv * &xv)
        };
        (self.rules[0].integrate(&f), self.rules[1].integrate(&f))
    }

    /// <p, q> under the deformed weight, with the node-doubling gate.
    pub fn inner_product(&self, p: &Poly, q: &Poly) -> Result<Mp> {
        let (coarse, fine) = self.eval_pair(p, q);
        let rel = rel_diff(coarse.to_f64(), fine.to_f64());
        if rel > CONVERGENCE_REL {
            return Err(Error::NonConvergent(format!(
                "{}: node doubling moved the integral by {rel:e}",
                self.params.describe()
            )));
        }
        Ok(fine)
    }
}

/// Degree fold for hDPT rules: enough for products of two polynomials at
/// the bound-state cap.
fn hdpt_fold(params: &ParamSet) -> usize {
    match params.n_max() {
        Some(nmax) if nmax >= 0 => 2 * nmax as usize,
        _ => 0,
    }
}

/// <p, q> under the deformed weight of `params`, with convergence gate.
pub fn inner_product(params: &ParamSet, p: &Poly, q: &Poly, nodes: usize) -> Result<Mp> {
    InnerProductRule::new(params, nodes)?.inner_product(p, q)
}

/// Classical inner product (p, q)_mu = int p q W(eta; mu) d eta for the
/// family's base weight at an explicit mu.
pub fn classical_inner(
    family: Family,
    mu: &Lambda,
    p: &Poly,
    q: &Poly,
    nodes: usize,
) -> Result<Mp> {
    let fold = match family {
        Family::Hdpt => {
            let d = p.degree().unwrap_or(0) + q.degree().unwrap_or(0);
            // moments must stay finite: degree < h - g
            let bound = mu.h() - &mu.g;
            if Rat::from_integer((d as i64).into()) >= bound {
                return Err(Error::InvalidParams(format!(
                    "hDPT classical inner product of degree {d} diverges",
                )));
            }
            d
        }
        _ => 0,
    };
    let coarse = QuadratureRule::classical(family, mu, nodes, fold)?;
    let fine = QuadratureRule::classical(family, mu, 2 * nodes, fold)?;
    let f = |x: &Mp| &poly_eval_mp(p, x) * &poly_eval_mp(q, x);
    let a = coarse.integrate(f);
    let b = fine.integrate(f);
    if rel_diff(a.to_f64(), b.to_f64()) > CONVERGENCE_REL {
        return Err(Error::NonConvergent(
            "classical inner product failed the node-doubling gate".into(),
        ));
    }
    Ok(b)
}

/// Gram matrix of P_{ell,0..nmax}: off-diagonals must vanish within `tol`
/// relative to sqrt(G_nn G_mm), and the diagonal must match the closed-form
/// norms within `tol`.
pub fn gram_check(params: &ParamSet, nmax: usize, tol: f64) -> VerificationReport {
    let rep = VerificationReport::new("integration", "gram-orthogonality")
        .with_params(params)
        .with_n(nmax);
    let rule = match InnerProductRule::new(params, BASE_NODES) {
        Ok(r) => r,
        Err(e) => return rep.failed(e.to_string()),
    };
    let mut polys = vec![];
    for n in 0..=nmax {
        match xpoly(params, n) {
            Ok(x) => polys.push(x.poly),
            Err(e) => return rep.failed(format!("n={n}: {e}")),
        }
    }
    let mut diag = vec![];
    for (n, p) in polys.iter().enumerate() {
        match rule.inner_product(p, p) {
            Ok(v) => {
                let expect = h_xell(params, n).eval();
                let rel = rel_diff(v.to_f64(), expect.to_f64());
                if rel > tol {
                    return rep.failed(format!(
                        "norm mismatch at n={n}: quadrature {} vs closed form {} (rel {rel:e})",
                        v.to_f64(),
                        expect.to_f64()
                    ));
                }
                diag.push(v);
            }
            Err(e) => return rep.failed(e.to_string()),
        }
    }
    for n in 0..=nmax {
        for m in (n + 1)..=nmax {
            let v = match rule.inner_product(&polys[n], &polys[m]) {
                Ok(v) => v,
                Err(e) => return rep.failed(e.to_string()),
            };
            let scale = (&diag[n] * &diag[m]).sqrt().to_f64();
            let off = v.to_f64().abs() / scale;
            if off > tol {
                return rep.failed(format!("off-diagonal ({n},{m}) = {off:e} exceeds {tol:e}"));
            }
        }
    }
    rep.passed()
}

/// The integration formula: <Xi[p], Xi[q]>_{l,lambda} =
/// d1 d3(lambda + l delta, l) (p,q)_{lambda'} + (1/4) cF^2 (p',q')_{lambda'+delta},
/// checked by quadrature on both sides.
pub fn integration_formula_check(params: &ParamSet, p: &Poly, q: &Poly) -> VerificationReport {
    let rep = VerificationReport::new("integration", "integration-formula").with_params(params);
    let t = FamilyTable::from_params(params);
    let lam_prime = params.lambda_prime();
    let lam_prime_up = params.family.shift(&lam_prime, 1);

    let lhs = match inner_product(params, &xi_map(params, p), &xi_map(params, q), BASE_NODES) {
        Ok(v) => v,
        Err(e) => return rep.failed(format!("lhs: {e}")),
    };
    let c1 = match classical_inner(params.family, &lam_prime, p, q, BASE_NODES) {
        Ok(v) => v,
        Err(e) => return rep.failed(format!("rhs first term: {e}")),
    };
    let c2 = match classical_inner(
        params.family,
        &lam_prime_up,
        &p.derive(),
        &q.derive(),
        BASE_NODES,
    ) {
        Ok(v) => v,
        Err(e) => return rep.failed(format!("rhs second term: {e}")),
    };
    let s1 = Mp::from_rat(&(t.d1() * t.d3_at(&params.lambda_at(params.ell as i64))));
    let cf = t.cf();
    let s2 = Mp::from_rat(&(&cf * &cf / rat(4, 1)));
    let rhs = &(&s1 * &c1) + &(&s2 * &c2);
    let rel = rel_diff(lhs.to_f64(), rhs.to_f64());
    // absolute criterion when both sides are numerically zero relative to
    // the integrand scale (orthogonal pairs)
    let scale = lhs.to_f64().abs().max(rhs.to_f64().abs());
    if scale < 1e-18 || rel <= 1e-8 {
        rep.passed().with_detail(format!(
            "lhs {} rhs {} rel {rel:e}",
            lhs.to_f64(),
            rhs.to_f64()
        ))
    } else {
        rep.failed(format!(
            "lhs {} vs rhs {} (rel {rel:e})",
            lhs.to_f64(),
            rhs.to_f64()
        ))
    }
}

/// The exact gamma-symbolic corollary of the integration formula:
/// d0(n)^2 h_{l,n} = d1 d3(lambda+l delta) h_n(lambda')
///                  + (1/4) f_n(lambda')^2 h_{n-1}(lambda'+delta),
/// with h_{-1} = 0; verified as exact rational ratios of gamma products.
pub fn norm_identity_check(params: &ParamSet, n: usize) -> VerificationReport {
    let rep = VerificationReport::new("integration", "norm-identity")
        .with_params(params)
        .with_n(n);
    let t = FamilyTable::from_params(params);
    let lam_prime = params.lambda_prime();
    let lam_prime_up = params.family.shift(&lam_prime, 1);
    let d0 = t.d0(n as i64);
    let lhs = h_xell(params, n).scale(&(&d0 * &d0));
    let term1 = h_classical(params.family, n, &lam_prime)
        .scale(&(t.d1() * t.d3_at(&params.lambda_at(params.ell as i64))));
    let term2 = if n == 0 {
        GammaProduct::zero()
    } else {
        let f = t.f_n_at(n as i64, &lam_prime);
        h_classical(params.family, n - 1, &lam_prime_up).scale(&(&f * &f / rat(4, 1)))
    };
    let Some(rhs) = term1.try_add(&term2) else {
        return rep.failed("rhs terms do not share gamma structure");
    };
    match lhs.ratio_to(&rhs) {
        Some(r) if r.is_one() => rep.passed(),
        Some(r) => rep.failed(format!("lhs/rhs = {r} != 1")),
        None => rep.failed("lhs and rhs have different gamma structure"),
    }
}

/// Gram-Schmidt construction from the seed images Xi[p_k]; each output must
/// be proportional to the closed form within `tol` coefficient-ratio
/// spread, and the outputs must stay numerically orthogonal.
pub fn gram_schmidt(params: &ParamSet, nmax: usize) -> Result<Vec<Vec<Mp>>> {
    let rule = InnerProductRule::new(params, BASE_NODES)?;
    let t = FamilyTable::from_params(params);
    let dim = params.ell + nmax + 1;
    let seeds: Vec<Vec<Mp>> = (0..=nmax)
        .map(|k| {
            let v = xi_map(params, &t.gs_seed(k));
            poly_to_mp(&v, dim)
        })
        .collect();

    let inner = |u: &[Mp], v: &[Mp]| -> Result<Mp> {
        let (a, b) = mp_pair_integral(&rule, u, v);
        if rel_diff(a.to_f64(), b.to_f64()) > CONVERGENCE_REL && a.to_f64().abs() > 1e-20 {
            return Err(Error::NonConvergent("gram-schmidt inner product".into()));
        }
        Ok(b)
    };

    let mut basis: Vec<Vec<Mp>> = vec![];
    let mut norms: Vec<Mp> = vec![];
    for seed in seeds {
        let mut w = seed;
        for (b, nb) in basis.iter().zip(&norms) {
            let c = &inner(b, &w)? / nb;
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = &*wi - &(&c * bi);
            }
        }
        let nw = inner(&w, &w)?;
        if nw.to_f64() <= 0.0 {
            return Err(Error::LossOfOrthogonality(
                "nonpositive squared norm in Gram-Schmidt".into(),
            ));
        }
        basis.push(w);
        norms.push(nw);
    }

    // orthogonality audit
    for i in 0..basis.len() {
        for j in 0..i {
            let v = inner(&basis[i], &basis[j])?;
            let scale = (&norms[i] * &norms[j]).sqrt().to_f64();
            if v.to_f64().abs() / scale > 1e-6 {
                return Err(Error::LossOfOrthogonality(format!(
                    "pair ({i},{j}) at {:e}",
                    v.to_f64().abs() / scale
                )));
            }
        }
    }
    Ok(basis)
}

fn poly_to_mp(p: &Poly, dim: usize) -> Vec<Mp> {
    let mut out: Vec<Mp> = p.coeffs().iter().map(Mp::from_rat).collect();
    out.resize(dim, Mp::zero());
    out
}

fn mp_horner(coeffs: &[Mp], x: &Mp) -> Mp {
    let mut acc = Mp::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn mp_pair_integral(rule: &InnerProductRule, u: &[Mp], v: &[Mp]) -> (Mp, Mp) {
    let f = |x: &Mp| {
        let xv = poly_eval_mp(&rule.divisor, x);
        &(&mp_horner(u, x) * &mp_horner(v, x)) / &(&xv * &xv)
    };
    (rule.rules[0].integrate(&f), rule.rules[1].integrate(&f))
}

/// Gram-Schmidt outputs against the closed forms: constant coefficient
/// ratio within `tol` relative spread.
pub fn gram_schmidt_check(params: &ParamSet, nmax: usize, tol: f64) -> VerificationReport {
    let rep = VerificationReport::new("gramschmidt", "proportional-to-closed-form")
        .with_params(params)
        .with_n(nmax);
    let basis = match gram_schmidt(params, nmax) {
        Ok(b) => b,
        Err(e) => return rep.failed(e.to_string()),
    };
    for (n, gs) in basis.iter().enumerate() {
        let closed = match xpoly(params, n) {
            Ok(x) => x.poly,
            Err(e) => return rep.failed(e.to_string()),
        };
        let lead = closed.leading_coeff();
        let deg = closed.degree().unwrap();
        if gs.len() <= deg || gs[deg].is_zero() {
            return rep.failed(format!("GS vector {n} lost its leading coefficient"));
        }
        let scale = &gs[deg] / &Mp::from_rat(&lead);
        let gs_mag = gs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        for k in 0..gs.len() {
            let expect = if k <= deg {
                &Mp::from_rat(&closed.coeff(k)) * &scale
            } else {
                Mp::zero()
            };
            let diff = (&gs[k] - &expect).to_f64().abs();
            if diff / gs_mag > tol {
                return rep.failed(format!(
                    "vector {n}, coefficient {k}: relative deviation {:e}",
                    diff / gs_mag
                ));
            }
        }
    }
    rep.passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::xcore::ALL_FAMILIES;

    fn ps(family: Family, g: (i64, i64), h: Option<(i64, i64)>, ell: usize) -> ParamSet {
        ParamSet::new(family, rat(g.0, g.1), h.map(|(n, d)| rat(n, d)), ell).unwrap()
    }

    fn sample(fam: Family, ell: usize) -> ParamSet {
        match fam {
            Family::L1 | Family::L2 => ps(fam, (1, 1), None, ell),
            Family::J1 => ps(fam, (5, 2), Some((3, 2)), ell),
            Family::J2 => ps(fam, (1, 1), Some((2, 1)), ell),
            Family::Hdpt => ps(fam, (1, 1), Some((18, 1)), ell),
        }
    }

    #[test]
    fn classical_norm_value() {
        // <L_0, L_0> at g=1, ell=0: sqrt(pi)/4
        let p = ps(Family::L1, (1, 1), None, 0);
        let v = inner_product(&p, &Poly::one(), &Poly::one(), 64).unwrap();
        assert!((v.to_f64() - 0.443113462726379).abs() < 1e-12);
    }

    #[test]
    fn x_norm_value_spot() {
        // h_{1,1} for L1 at g=1: 21 sqrt(pi) / 16 = 2.3263456793...
        let p = ps(Family::L1, (1, 1), None, 1);
        let x = xpoly(&p, 1).unwrap().poly;
        let v = inner_product(&p, &x, &x, 128).unwrap();
        let expect = 21.0 * std::f64::consts::PI.sqrt() / 16.0;
        assert!((v.to_f64() - expect).abs() < 1e-10, "{} vs {expect}", v.to_f64());
    }

    #[test]
    fn orthogonality_low_pair() {
        let p = sample(Family::J2, 1);
        let rule = InnerProductRule::new(&p, 96).unwrap();
        let p0 = xpoly(&p, 0).unwrap().poly;
        let p1 = xpoly(&p, 1).unwrap().poly;
        let v01 = rule.inner_product(&p0, &p1).unwrap();
        let v00 = rule.inner_product(&p0, &p0).unwrap();
        let v11 = rule.inner_product(&p1, &p1).unwrap();
        let off = v01.to_f64().abs() / (v00.to_f64() * v11.to_f64()).sqrt();
        assert!(off < 1e-12, "off {off:e}");
    }

    #[test]
    fn gram_small_all_families() {
        for fam in ALL_FAMILIES {
            let p = sample(fam, 1);
            let rep = gram_check(&p, 2, 1e-8);
            assert!(rep.pass, "{}: {}", p.describe(), rep.detail);
        }
    }

    #[test]
    fn norm_identity_exact() {
        for fam in ALL_FAMILIES {
            for ell in 0..4 {
                for n in 0..5 {
                    let p = sample(fam, ell);
                    let rep = norm_identity_check(&p, n);
                    assert!(rep.pass, "{} n={n}: {}", p.describe(), rep.detail);
                }
            }
        }
    }

    #[test]
    fn integration_formula_small() {
        let p = sample(Family::L1, 1);
        let rep = integration_formula_check(&p, &Poly::one(), &Poly::one());
        assert!(rep.pass, "{}", rep.detail);
        let rep = integration_formula_check(&p, &Poly::eta(), &Poly::from_i64(&[1, 2]));
        assert!(rep.pass, "{}", rep.detail);
    }

    #[test]
    fn gram_schmidt_proportional() {
        let p = sample(Family::L1, 1);
        let rep = gram_schmidt_check(&p, 2, 1e-8);
        assert!(rep.pass, "{}", rep.detail);
    }
}
