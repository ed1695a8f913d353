//! The exceptional-family layer: parameter sets, per-family constant tables,
//! deforming polynomials xi_ell, the linear Xi-map, closed-form X_ell
//! polynomials, weights and norm constants for the L1, L2, J1, J2 and
//! hyperbolic-DPT families.

mod table;
mod weight;

pub use table::FamilyTable;
pub use weight::{weight_factor, WeightDescriptor};

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde_json::json;

use crate::classical::{classical_p, gamma::GammaProduct, jacobi, laguerre};
use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_to_string, Poly, Rat};
use crate::report::VerificationReport;

/// The five exceptional families. L1/L2 deform Laguerre, J1/J2 deform
/// Jacobi, Hdpt is the Jacobi-type family of the hyperbolic
/// Darboux-Poschl-Teller system with finitely many bound states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    L1,
    L2,
    J1,
    J2,
    Hdpt,
}

pub const ALL_FAMILIES: [Family; 5] = [Family::L1, Family::L2, Family::J1, Family::J2, Family::Hdpt];

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::J1 => "J1",
            Family::J2 => "J2",
            Family::Hdpt => "hDPT",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Family::L1),
            "l2" => Ok(Family::L2),
            "j1" => Ok(Family::J1),
            "j2" => Ok(Family::J2),
            "hdpt" => Ok(Family::Hdpt),
            _ => Err(Error::Parse(format!(
                "unknown family `{s}` (expected L1, L2, J1, J2 or hDPT)"
            ))),
        }
    }
}

/// Parameter vector lambda = g for the Laguerre families, (g, h) otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda {
    pub g: Rat,
    pub h: Option<Rat>,
}

impl Lambda {
    pub fn l(g: Rat) -> Self {
        Lambda { g, h: None }
    }

    pub fn j(g: Rat, h: Rat) -> Self {
        Lambda { g, h: Some(h) }
    }

    pub fn h(&self) -> &Rat {
        self.h.as_ref().expect("Jacobi-type lambda carries h")
    }

    pub fn describe(&self) -> String {
        match &self.h {
            Some(h) => format!("g={} h={}", rat_to_string(&self.g), rat_to_string(h)),
            None => format!("g={}", rat_to_string(&self.g)),
        }
    }
}

impl Family {
    pub fn is_laguerre(self) -> bool {
        matches!(self, Family::L1 | Family::L2)
    }

    /// lambda + k * delta, with delta = 1 (L), (1,1) (J), (1,-1) (hDPT).
    pub fn shift(self, lam: &Lambda, k: i64) -> Lambda {
        let kf = Rat::from_integer(k.into());
        match self {
            Family::L1 | Family::L2 => Lambda::l(&lam.g + &kf),
            Family::J1 | Family::J2 => Lambda::j(&lam.g + &kf, lam.h() + &kf),
            Family::Hdpt => Lambda::j(&lam.g + &kf, lam.h() - &kf),
        }
    }

    /// lambda + delta_tilde, with delta_tilde = -1 (L1), +1 (L2),
    /// (-1,1) (J1), (1,-1) (J2), (1,1) (hDPT).
    pub fn shift_tilde(self, lam: &Lambda) -> Lambda {
        let one = Rat::one();
        match self {
            Family::L1 => Lambda::l(&lam.g - &one),
            Family::L2 => Lambda::l(&lam.g + &one),
            Family::J1 => Lambda::j(&lam.g - &one, lam.h() + &one),
            Family::J2 => Lambda::j(&lam.g + &one, lam.h() - &one),
            Family::Hdpt => Lambda::j(&lam.g + &one, lam.h() + &one),
        }
    }

    /// lambda' = lambda + ell*delta + delta_tilde, the base-polynomial
    /// parameter inside the Xi-map.
    pub fn lambda_prime(self, lam: &Lambda, ell: usize) -> Lambda {
        self.shift_tilde(&self.shift(lam, ell as i64))
    }

    /// Classical indices (alpha, beta) of the base polynomial P_n(eta; lambda).
    pub fn base_indices(self, lam: &Lambda) -> (Rat, Option<Rat>) {
        let half = rat(1, 2);
        match self {
            Family::L1 | Family::L2 => (&lam.g - &half, None),
            Family::J1 | Family::J2 => (&lam.g - &half, Some(lam.h() - &half)),
            Family::Hdpt => (&lam.g - &half, Some(-lam.h() - &half)),
        }
    }
}

/// A family with parameters (g, h) and deformation degree ell.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    pub family: Family,
    pub lambda: Lambda,
    pub ell: usize,
}

impl ParamSet {
    pub fn new(family: Family, g: Rat, h: Option<Rat>, ell: usize) -> Result<Self> {
        let lambda = match family {
            Family::L1 | Family::L2 => {
                if h.is_some() {
                    return Err(Error::InvalidParams(
                        "Laguerre families take no h parameter".into(),
                    ));
                }
                Lambda::l(g)
            }
            _ => Lambda::j(
                g,
                h.ok_or_else(|| Error::InvalidParams("Jacobi-type families need h".into()))?,
            ),
        };
        Ok(ParamSet {
            family,
            lambda,
            ell,
        })
    }

    /// True when the parameters sit inside the ranges that make the weight
    /// positive and integrable: g > 0 (L1/L2), g > h > 0 (J1),
    /// h > g > 0 (J2 and hDPT). Identity checks are polynomial in the
    /// parameters and remain valid outside; weights, norms and quadrature
    /// refuse to run there.
    pub fn in_paper_range(&self) -> bool {
        let zero = Rat::zero();
        match self.family {
            Family::L1 | Family::L2 => self.lambda.g > zero,
            Family::J1 => self.lambda.g > *self.lambda.h() && *self.lambda.h() > zero,
            Family::J2 | Family::Hdpt => {
                *self.lambda.h() > self.lambda.g && self.lambda.g > zero
            }
        }
    }

    pub fn require_paper_range(&self) -> Result<()> {
        if self.in_paper_range() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "{} with {} is outside the weight-positivity ranges",
                self.family,
                self.lambda.describe()
            )))
        }
    }

    /// Bound-state count n_B of the hyperbolic DPT system: the greatest
    /// integer strictly below (h-g)/2 when that is an integer, its floor
    /// otherwise. None for the other families.
    pub fn n_b(&self) -> Option<i64> {
        if self.family != Family::Hdpt {
            return None;
        }
        let x = (self.lambda.h() - &self.lambda.g) / rat(2, 1);
        let fl = x.floor();
        let nb = if fl == x {
            fl.to_integer() - 1
        } else {
            fl.to_integer()
        };
        Some(i64::try_from(nb).unwrap_or(i64::MAX))
    }

    /// Largest valid polynomial index n (hDPT only): n_B - ell.
    pub fn n_max(&self) -> Option<i64> {
        self.n_b().map(|nb| nb - self.ell as i64)
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if let Some(max) = self.n_max() {
            if (n as i64) > max {
                return Err(Error::BoundStateExceeded {
                    n,
                    max: max as isize,
                });
            }
        }
        Ok(())
    }

    pub fn lambda_at(&self, k: i64) -> Lambda {
        self.family.shift(&self.lambda, k)
    }

    pub fn lambda_prime(&self) -> Lambda {
        self.family.lambda_prime(&self.lambda, self.ell)
    }

    pub fn with_lambda(&self, lambda: Lambda) -> ParamSet {
        ParamSet {
            family: self.family,
            lambda,
            ell: self.ell,
        }
    }

    pub fn describe(&self) -> String {
        format!("{} {} ell={}", self.family, self.lambda.describe(), self.ell)
    }
}

/// How a concrete X polynomial was produced, for cross-checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Rodrigues,
    GramSchmidt,
    OriginalJ2,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Rodrigues => "rodrigues",
            Provenance::GramSchmidt => "gram-schmidt",
            Provenance::OriginalJ2 => "original-J2",
        };
        write!(f, "{s}")
    }
}

/// A constructed P_{ell,n} with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct XPolynomial {
    pub params: ParamSet,
    pub n: usize,
    pub poly: Poly,
    pub provenance: Provenance,
}

impl XPolynomial {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.params.family.to_string(),
            "g": rat_to_string(&self.params.lambda.g),
            "h": self.params.lambda.h.as_ref().map(rat_to_string),
            "ell": self.params.ell,
            "n": self.n,
            "coeffs": self.poly.coeff_strings(),
            "provenance": self.provenance.to_string(),
        })
    }
}

/// The deforming polynomial xi_ell(eta; lambda): a degree-ell Laguerre or
/// Jacobi polynomial with shifted (often negative) indices; xi_0 = 1.
pub fn xi_at(family: Family, lam: &Lambda, ell: usize) -> Poly {
    let half = rat(1, 2);
    let ellf = Rat::from_integer((ell as i64).into());
    match family {
        Family::L1 => {
            // L_ell^(g+ell-3/2)(-eta)
            let a = &lam.g + &ellf - rat(3, 2);
            laguerre(ell, &a).compose_affine(&-Rat::one(), &Rat::zero())
        }
        Family::L2 => {
            let a = -&lam.g - &ellf - &half;
            laguerre(ell, &a)
        }
        Family::J1 => {
            let a = &lam.g + &ellf - rat(3, 2);
            let b = -lam.h() - &ellf - &half;
            jacobi(ell, &a, &b)
        }
        Family::J2 => {
            let a = -&lam.g - &ellf - &half;
            let b = lam.h() + &ellf - rat(3, 2);
            jacobi(ell, &a, &b)
        }
        Family::Hdpt => {
            let a = -&lam.g - &ellf - &half;
            let b = -lam.h() + &ellf - rat(3, 2);
            jacobi(ell, &a, &b)
        }
    }
}

pub fn xi(params: &ParamSet) -> Poly {
    xi_at(params.family, &params.lambda, params.ell)
}

/// The linear map Xi_{ell,lambda}[p] = d1(lambda) xi_ell(eta; lambda+delta) p
/// - d2(eta) xi_ell(eta; lambda) p', evaluated at an explicit lambda.
pub fn xi_map_at(family: Family, lam: &Lambda, ell: usize, p: &Poly) -> Poly {
    let t = FamilyTable::new(family, lam.clone(), ell);
    let xi_up = xi_at(family, &family.shift(lam, 1), ell);
    let xi0 = xi_at(family, lam, ell);
    &(&xi_up * p).scale(&t.d1()) - &(&(&t.d2() * &xi0) * &p.derive())
}

pub fn xi_map(params: &ParamSet, p: &Poly) -> Poly {
    xi_map_at(params.family, &params.lambda, params.ell, p)
}

/// Closed-form X polynomial: d0(n,lambda) P_{ell,n} = Xi[P_n(eta; lambda')].
/// Enforces the hDPT bound-state cap; `xpoly_formal` skips the cap for
/// identity and generating-function work where the construction stays a
/// perfectly good polynomial.
pub fn xpoly(params: &ParamSet, n: usize) -> Result<XPolynomial> {
    params.check_n(n)?;
    xpoly_formal(params, n)
}

pub fn xpoly_formal(params: &ParamSet, n: usize) -> Result<XPolynomial> {
    let table = FamilyTable::from_params(params);
    let d0 = table.d0(n as i64);
    if d0.is_zero() {
        return Err(Error::DegenerateD0(n));
    }
    let base = classical_p(params.family, n, &params.lambda_prime());
    let poly = xi_map(params, &base).scale(&d0.recip());
    Ok(XPolynomial {
        params: params.clone(),
        n,
        poly,
        provenance: Provenance::ClosedForm,
    })
}

/// Norm constant h_n(lambda) of the base classical family, as a symbolic
/// gamma product.
pub fn h_classical(family: Family, n: usize, lam: &Lambda) -> GammaProduct {
    let half = rat(1, 2);
    let nf = Rat::from_integer((n as i64).into());
    let mut fact = Rat::one();
    for k in 2..=n {
        fact *= Rat::from_integer((k as i64).into());
    }
    match family {
        Family::L1 | Family::L2 => {
            // Gamma(n+g+1/2) / (2 n!)
            GammaProduct::gamma(&(&nf + &lam.g + &half)).scale(&(rat(1, 2) / &fact))
        }
        Family::J1 | Family::J2 => {
            let g = &lam.g;
            let h = lam.h();
            let num = GammaProduct::gamma(&(&nf + g + &half))
                .mul(&GammaProduct::gamma(&(&nf + h + &half)));
            let den = GammaProduct::gamma(&(&nf + g + h));
            let s = rat(1, 2) / (&fact * (&nf + &nf + g + h));
            num.div(&den).scale(&s)
        }
        Family::Hdpt => {
            let g = &lam.g;
            let h = lam.h();
            let num = GammaProduct::gamma(&(&nf + g + &half))
                .mul(&GammaProduct::gamma(&(h - g - &nf + Rat::one())));
            let den = GammaProduct::gamma(&(h - &nf + &half));
            let s = rat(1, 2) / (&fact * (h - g - &nf - &nf));
            num.div(&den).scale(&s)
        }
    }
}

/// Norm constant h_{ell,n}(lambda) of the X polynomial, as a symbolic gamma
/// product: h_n(lambda + ell delta) times a rational family factor.
pub fn h_xell(params: &ParamSet, n: usize) -> GammaProduct {
    let lam = &params.lambda;
    let ell = Rat::from_integer((params.ell as i64).into());
    let nf = Rat::from_integer((n as i64).into());
    let half = rat(1, 2);
    let base = h_classical(params.family, n, &params.lambda_at(params.ell as i64));
    let factor = match params.family {
        Family::L1 => {
            (&nf + &lam.g + &ell + &ell - &half) / (&nf + &lam.g + &ell - &half)
        }
        Family::L2 => (&nf + &lam.g + &ell + &half) / (&nf + &lam.g + &half),
        Family::J1 => {
            let h = lam.h();
            (&nf + h + &ell + &half) * (&nf + &lam.g + &ell + &ell - &half)
                / ((&nf + h + &half) * (&nf + &lam.g + &ell - &half))
        }
        Family::J2 => {
            let h = lam.h();
            (&nf + &lam.g + &ell + &half) * (&nf + h + &ell + &ell - &half)
                / ((&nf + &lam.g + &half) * (&nf + h + &ell - &half))
        }
        Family::Hdpt => {
            let h = lam.h();
            (&nf + &lam.g + &ell + &half) * (h - &nf - &ell - &ell + &half)
                / ((&nf + &lam.g + &half) * (h - &nf - &ell + &half))
        }
    };
    base.scale(&factor)
}

/// Norm constant with both the symbolic gamma form and its float value.
#[derive(Clone, Debug)]
pub struct NormValue {
    pub symbolic: GammaProduct,
    pub float: f64,
}

pub fn norm(params: &ParamSet, n: usize) -> Result<NormValue> {
    params.require_paper_range()?;
    params.check_n(n)?;
    let symbolic = h_xell(params, n);
    let float = symbolic.to_f64();
    Ok(NormValue { symbolic, float })
}

/// The original (pre-simplification) form of the J2 polynomials, written
/// with alpha = g + ell - 1/2, beta = h + ell - 1/2 and the convention
/// xi_k = 0 for k < 0. Must equal the closed form exactly.
pub fn xpoly_original_j2(params: &ParamSet, n: usize) -> Result<XPolynomial> {
    if params.family != Family::J2 {
        return Err(Error::InvalidParams(
            "the original form is reproduced for J2 only".into(),
        ));
    }
    let ell = params.ell as i64;
    let nf = Rat::from_integer((n as i64).into());
    let ellf = Rat::from_integer(ell.into());
    let half = rat(1, 2);
    let alpha = &params.lambda.g + &ellf - &half;
    let beta = params.lambda.h() + &ellf - &half;

    let d_a = &ellf + &ellf - &alpha + &beta - rat(2, 1); // 2l - a + b - 2
    let d_b = &nf + &nf + &alpha + &beta; // 2n + a + b
    let d_c = &alpha + &nf - &ellf + Rat::one(); // a + n - l + 1  (= d0)
    for (name, v) in [("2l-a+b-2", &d_a), ("2n+a+b", &d_b), ("a+n-l+1", &d_c)] {
        if v.is_zero() {
            return Err(Error::DegenerateDenominator(name.to_string()));
        }
    }

    let jac = |k: i64, a: &Rat, b: &Rat| -> Poly {
        if k < 0 {
            Poly::zero()
        } else {
            jacobi(k as usize, a, b)
        }
    };

    let one = Rat::one();
    let p_l = jac(ell, &(-&alpha - rat(2, 1)), &beta);
    let p_lm1 = jac(ell - 1, &-&alpha, &beta);
    let p_lm2 = jac(ell - 2, &-&alpha, &beta);
    let p_n = jac(n as i64, &alpha, &beta);
    let p_nm1 = jac(n as i64 - 1, &alpha, &beta);

    let c1 = (&nf + &nf) * (&ellf - &alpha + &beta - &one) / (&d_a * &d_b);
    let c2 = &nf * (&beta + &ellf - &one) / (&d_c * &d_a);
    let c3 = (&ellf - &alpha + &beta - &one) * (&alpha + &nf) / (&d_c * &d_b);

    let bracket = &(&p_l + &p_lm1.scale(&c1)) - &p_lm2.scale(&c2);
    let poly = &(&bracket * &p_n) + &(&p_lm1 * &p_nm1).scale(&c3);

    Ok(XPolynomial {
        params: params.clone(),
        n,
        poly,
        provenance: Provenance::OriginalJ2,
    })
}

// ---------------------------------------------------------------------------
// structural checks owned by this layer
// ---------------------------------------------------------------------------

/// Degree ell + n and the n = 0 collapse P_{ell,0} = xi_ell(eta; lambda+delta).
pub fn structure_check(params: &ParamSet, n: usize) -> VerificationReport {
    let rep = VerificationReport::new("xi", "structure")
        .with_params(params)
        .with_n(n);
    let xp = match xpoly(params, n) {
        Ok(x) => x,
        Err(e) => return rep.failed(e.to_string()),
    };
    if xp.poly.degree() != Some(params.ell + n) {
        return rep.failed(format!(
            "degree {:?} != ell+n = {}",
            xp.poly.degree(),
            params.ell + n
        ));
    }
    if n == 0 {
        let expected = xi_at(params.family, &params.lambda_at(1), params.ell);
        if xp.poly != expected {
            return rep.failed("P_{ell,0} != xi_ell(eta; lambda+delta)");
        }
    }
    rep.passed()
}

/// The deforming polynomial's own differential equation:
/// c2 xi'' + c1_tilde xi' + (1/4) E_tilde_ell xi = 0.
pub fn xi_diffeq_check(params: &ParamSet) -> VerificationReport {
    let rep = VerificationReport::new("xi", "xi-diffeq").with_params(params);
    let t = FamilyTable::from_params(params);
    let x = xi(params);
    let resid = &(&(&t.c2() * &x.derive().derive()) + &(&t.c1_tilde() * &x.derive()))
        + &x.scale(&(t.e_tilde() / rat(4, 1)));
    rep.residual_poly(&resid)
}

/// J1/J2 mirror symmetry: xi^J2(eta; g,h) = (-1)^ell xi^J1(-eta; h,g) and
/// P^J2_{ell,n}(eta; g,h) = (-1)^(ell+n) P^J1_{ell,n}(-eta; h,g).
pub fn mirror_check(params: &ParamSet, n: usize) -> VerificationReport {
    let rep = VerificationReport::new("xi", "mirror")
        .with_params(params)
        .with_n(n);
    if params.family != Family::J2 {
        return rep.skip("mirror check runs from the J2 side");
    }
    let j1 = ParamSet {
        family: Family::J1,
        lambda: Lambda::j(params.lambda.h().clone(), params.lambda.g.clone()),
        ell: params.ell,
    };
    let mut xi1 = xi(&j1).compose_affine(&-Rat::one(), &Rat::zero());
    if params.ell % 2 == 1 {
        xi1 = xi1.scale(&-Rat::one());
    }
    let r1 = &xi(params) - &xi1;
    if !r1.is_zero() {
        return rep.residual_poly(&r1);
    }
    let p2 = match xpoly(params, n) {
        Ok(x) => x.poly,
        Err(e) => return rep.failed(e.to_string()),
    };
    let mut p1 = match xpoly(&j1, n) {
        Ok(x) => x.poly.compose_affine(&-Rat::one(), &Rat::zero()),
        Err(e) => return rep.failed(e.to_string()),
    };
    if (params.ell + n) % 2 == 1 {
        p1 = p1.scale(&-Rat::one());
    }
    rep.residual_poly(&(&p2 - &p1))
}

/// hDPT bound-state edge: construction succeeds at n = n_B - ell and errors
/// one past it.
pub fn hdpt_bound_check(params: &ParamSet) -> VerificationReport {
    let rep = VerificationReport::new("xi", "hdpt-bound").with_params(params);
    let Some(nmax) = params.n_max() else {
        return rep.skip("bound applies to hDPT only");
    };
    if nmax < 0 {
        return rep.failed(format!("no valid n at all (n_max = {nmax})"));
    }
    if let Err(e) = xpoly(params, nmax as usize) {
        return rep.failed(format!("construction failed at n = n_max: {e}"));
    }
    match xpoly(params, nmax as usize + 1) {
        Err(Error::BoundStateExceeded { .. }) => rep.passed(),
        Ok(_) => rep.failed("construction past n_B - ell did not error"),
        Err(e) => rep.failed(format!("wrong error past the bound: {e}")),
    }
}

#[cfg(test)]
mod tests;
