//! Classical Laguerre and Jacobi polynomial toolkit: expansion formulas,
//! shift relations, differential equations, three-term recurrences,
//! Rodrigues formulas, generating functions, standalone identities and the
//! Jacobi-to-Laguerre limit.
//!
//! Negative, non-integer indices are fully supported in construction (the
//! deforming polynomials of [`crate::xcore`] demand them); only the
//! orthogonality-dependent operations in [`crate::analysis`] gate on
//! alpha, beta > -1.

pub mod gamma;

pub use gamma::{gamma_f64, gamma_mp, GammaProduct};

use num::{One, Signed, Zero};

use crate::analysis::mp::rat_to_f64;
use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_to_string, Poly, Rat, Series};
use crate::report::VerificationReport;
use crate::xcore::{Family, Lambda};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
pub fn pochhammer(a: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += Rat::one();
    }
    acc
}

/// Laguerre polynomial L_n^(alpha) from its expansion formula; any rational
/// alpha. Leading coefficient (-1)^n / n!.
pub fn laguerre(n: usize, alpha: &Rat) -> Poly {
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        // (-1)^k / (k! (n-k)!) * (alpha+k+1)_{n-k}
        let mut c = pochhammer(&(alpha + Rat::from_integer((k as i64 + 1).into())), n - k);
        c /= factorial(k) * factorial(n - k);
        if k % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Poly::new(coeffs)
}

/// L_{n}^{(alpha)} with the convention L_{-1} = 0 used by shift relations.
pub fn laguerre_i(n: i64, alpha: &Rat) -> Poly {
    if n < 0 {
        Poly::zero()
    } else {
        laguerre(n as usize, alpha)
    }
}

/// Jacobi polynomial P_n^(alpha,beta) from the expansion formula, written
/// without Pochhammer denominators so that any rational alpha, beta is
/// valid:  sum_k (-1)^k (n+a+b+1)_k (a+k+1)_{n-k} / (k! (n-k)!) ((1-x)/2)^k.
pub fn jacobi(n: usize, alpha: &Rat, beta: &Rat) -> Poly {
    let apb = alpha + beta;
    let mut in_u = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = pochhammer(&(&apb + Rat::from_integer((n as i64 + 1).into())), k);
        c *= pochhammer(&(alpha + Rat::from_integer((k as i64 + 1).into())), n - k);
        c /= factorial(k) * factorial(n - k);
        if k % 2 == 1 {
            c = -c;
        }
        in_u.push(c);
    }
    // substitute u = (1 - x)/2
    Poly::new(in_u).compose_affine(&rat(-1, 2), &rat(1, 2))
}

pub fn jacobi_i(n: i64, alpha: &Rat, beta: &Rat) -> Poly {
    if n < 0 {
        Poly::zero()
    } else {
        jacobi(n as usize, alpha, beta)
    }
}

/// True when the x^n coefficient of P_n^(alpha,beta) vanishes, i.e.
/// (n+alpha+beta+1)_n = 0. Not an error; the caller decides.
pub fn jacobi_is_degenerate(n: usize, alpha: &Rat, beta: &Rat) -> bool {
    pochhammer(
        &(alpha + beta + Rat::from_integer((n as i64 + 1).into())),
        n,
    )
    .is_zero()
}

fn factorial(n: usize) -> Rat {
    let mut acc = Rat::one();
    for k in 2..=n {
        acc *= Rat::from_integer((k as i64).into());
    }
    acc
}

/// The base polynomial P_n(eta; lambda) of a family: Laguerre with
/// alpha = g - 1/2 for L1/L2, Jacobi with (g - 1/2, h - 1/2) for J1/J2 and
/// (g - 1/2, -h - 1/2) for the hyperbolic DPT variant.
pub fn classical_p(family: Family, n: usize, lam: &Lambda) -> Poly {
    match family.base_indices(lam) {
        (a, None) => laguerre(n, &a),
        (a, Some(b)) => jacobi(n, &a, &b),
    }
}

pub fn classical_p_i(family: Family, n: i64, lam: &Lambda) -> Poly {
    if n < 0 {
        Poly::zero()
    } else {
        classical_p(family, n as usize, lam)
    }
}

/// Derivative of the base polynomial eliminated through the forward shift
/// relation rather than termwise differentiation; used by identity checks
/// that want derivative-free expansions.
pub fn classical_p_derivative_shifted(family: Family, n: usize, lam: &Lambda) -> Poly {
    match family.base_indices(lam) {
        (a, None) => {
            // dL_n^(a)/dx = -L_{n-1}^(a+1)
            laguerre_i(n as i64 - 1, &(&a + Rat::one())).scale(&-Rat::one())
        }
        (a, Some(b)) => {
            // dP_n^(a,b)/dx = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)
            let f = (&a + &b + Rat::from_integer((n as i64 + 1).into())) / rat(2, 1);
            jacobi_i(n as i64 - 1, &(&a + Rat::one()), &(&b + Rat::one())).scale(&f)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Laguerre,
    Jacobi,
}

#[derive(Clone, Debug)]
pub struct ClassicalParams {
    pub kind: ClassicalKind,
    pub alpha: Rat,
    /// Jacobi only.
    pub beta: Option<Rat>,
    pub n: usize,
}

impl ClassicalParams {
    pub fn laguerre(n: usize, alpha: Rat) -> Self {
        ClassicalParams {
            kind: ClassicalKind::Laguerre,
            alpha,
            beta: None,
            n,
        }
    }

    pub fn jacobi(n: usize, alpha: Rat, beta: Rat) -> Self {
        ClassicalParams {
            kind: ClassicalKind::Jacobi,
            alpha,
            beta: Some(beta),
            n,
        }
    }

    pub fn poly(&self) -> Poly {
        match self.kind {
            ClassicalKind::Laguerre => laguerre(self.n, &self.alpha),
            ClassicalKind::Jacobi => jacobi(self.n, &self.alpha, self.beta.as_ref().unwrap()),
        }
    }

    fn describe(&self) -> String {
        match self.kind {
            ClassicalKind::Laguerre => {
                format!("laguerre n={} alpha={}", self.n, rat_to_string(&self.alpha))
            }
            ClassicalKind::Jacobi => format!(
                "jacobi n={} alpha={} beta={}",
                self.n,
                rat_to_string(&self.alpha),
                rat_to_string(self.beta.as_ref().unwrap())
            ),
        }
    }
}

/// Coefficients of x P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

pub fn laguerre_recurrence(n: usize, alpha: &Rat) -> RecurrenceCoeffs {
    let nf = Rat::from_integer((n as i64).into());
    RecurrenceCoeffs {
        a: -(&nf + Rat::one()),
        b: &nf + &nf + alpha + Rat::one(),
        c: -(&nf + alpha),
    }
}

pub fn jacobi_recurrence(n: usize, alpha: &Rat, beta: &Rat) -> Result<RecurrenceCoeffs> {
    let nf = Rat::from_integer((n as i64).into());
    let apb = alpha + beta;
    let d0 = &nf + &nf + &apb;
    let d1 = &d0 + Rat::one();
    let d2 = &d0 + rat(2, 1);
    if d0.is_zero() || d1.is_zero() || d2.is_zero() {
        return Err(Error::DegenerateRecurrence(format!(
            "2n+alpha+beta in {{0,-1,-2}} at n={n}, alpha={}, beta={}",
            rat_to_string(alpha),
            rat_to_string(beta)
        )));
    }
    let two = rat(2, 1);
    Ok(RecurrenceCoeffs {
        a: &two * (&nf + Rat::one()) * (&nf + &apb + Rat::one()) / (&d1 * &d2),
        b: (beta * beta - alpha * alpha) / (&d0 * &d2),
        c: &two * (&nf + alpha) * (&nf + beta) / (&d0 * &d1),
    })
}

pub fn recurrence_coeffs(params: &ClassicalParams) -> Result<RecurrenceCoeffs> {
    match params.kind {
        ClassicalKind::Laguerre => Ok(laguerre_recurrence(params.n, &params.alpha)),
        ClassicalKind::Jacobi => {
            jacobi_recurrence(params.n, &params.alpha, params.beta.as_ref().unwrap())
        }
    }
}

/// Forward and backward shift relations, checked as exact zero residuals.
pub fn classical_shift_check(params: &ClassicalParams) -> VerificationReport {
    let rep = VerificationReport::new("classical", "shift").with_detail(params.describe());
    let n = params.n as i64;
    let one = Rat::one();
    let (fwd, bwd) = match params.kind {
        ClassicalKind::Laguerre => {
            let a = &params.alpha;
            let ln = laguerre(params.n, a);
            let lm = laguerre_i(n - 1, &(a + &one));
            let fwd = &ln.derive() + &lm;
            // x L'_{n-1}^{(a+1)} + (a+1-x) L_{n-1}^{(a+1)} - n L_n^{(a)}
            let coef = Poly::new(vec![a + &one, -one.clone()]);
            let bwd = &(&(&Poly::eta() * &lm.derive()) + &(&coef * &lm))
                - &ln.scale(&Rat::from_integer(n.into()));
            (fwd, bwd)
        }
        ClassicalKind::Jacobi => {
            let a = &params.alpha;
            let b = params.beta.as_ref().unwrap();
            let pn = jacobi(params.n, a, b);
            let pm = jacobi_i(n - 1, &(a + &one), &(b + &one));
            let f = (a + b + Rat::from_integer((n + 1).into())) / rat(2, 1);
            let fwd = &pn.derive() - &pm.scale(&f);
            // (1-x^2) P'_{n-1} + (b-a-(a+b+2)x) P_{n-1} + 2n P_n
            let c2 = Poly::from_i64(&[1, 0, -1]);
            let coef = Poly::new(vec![b - a, -(a + b + rat(2, 1))]);
            let bwd = &(&(&c2 * &pm.derive()) + &(&coef * &pm))
                + &pn.scale(&Rat::from_integer((2 * n).into()));
            (fwd, bwd)
        }
    };
    let resid = if !fwd.is_zero() { fwd } else { bwd };
    rep.residual_poly(&resid)
}

/// Differential equation, three-term recurrence, Rodrigues formula and the
/// standalone identities of the classical families, all as exact residuals.
pub fn classical_suite(params: &ClassicalParams) -> Vec<VerificationReport> {
    let mut out = vec![];
    let mk = |case: &str| VerificationReport::new("classical", case).with_detail(params.describe());
    let n = params.n;
    let p = params.poly();

    // differential equation
    let diffeq_resid = match params.kind {
        ClassicalKind::Laguerre => {
            let a = &params.alpha;
            let coef = Poly::new(vec![a + Rat::one(), -Rat::one()]);
            &(&(&Poly::eta() * &p.derive().derive()) + &(&coef * &p.derive()))
                + &p.scale(&Rat::from_integer((n as i64).into()))
        }
        ClassicalKind::Jacobi => {
            let a = &params.alpha;
            let b = params.beta.as_ref().unwrap();
            let c2 = Poly::from_i64(&[1, 0, -1]);
            let coef = Poly::new(vec![b - a, -(a + b + rat(2, 1))]);
            let eig = Rat::from_integer((n as i64).into())
                * (a + b + Rat::from_integer((n as i64 + 1).into()));
            &(&(&c2 * &p.derive().derive()) + &(&coef * &p.derive())) + &p.scale(&eig)
        }
    };
    out.push(mk("diffeq").residual_poly(&diffeq_resid));

    // three-term recurrence; at n = 0 the C term is absent (P_{-1} = 0)
    match recurrence_coeffs(params) {
        Ok(rc) => {
            let (pp, pm) = match params.kind {
                ClassicalKind::Laguerre => (
                    laguerre(n + 1, &params.alpha),
                    laguerre_i(n as i64 - 1, &params.alpha),
                ),
                ClassicalKind::Jacobi => {
                    let b = params.beta.as_ref().unwrap();
                    (
                        jacobi(n + 1, &params.alpha, b),
                        jacobi_i(n as i64 - 1, &params.alpha, b),
                    )
                }
            };
            let resid = &(&(&Poly::eta() * &p) - &pp.scale(&rc.a))
                - &(&p.scale(&rc.b) + &pm.scale(&rc.c));
            out.push(mk("recurrence").residual_poly(&resid));
        }
        Err(e) => out.push(mk("recurrence").failed(e.to_string())),
    }

    // Rodrigues formula via the exponent-ledger derivative
    let rod = match params.kind {
        ClassicalKind::Laguerre => laguerre_rodrigues(n, &params.alpha),
        ClassicalKind::Jacobi => jacobi_rodrigues(n, &params.alpha, params.beta.as_ref().unwrap()),
    };
    out.push(mk("rodrigues").residual_poly(&(&rod - &p)));

    // standalone identities
    for (case, resid) in classical_identity_residuals(params) {
        out.push(mk(&case).residual_poly(&resid));
    }

    out
}

/// n ledger-derivative steps of d/dx [e^-x x^c R] = e^-x x^(c-1) ((c-x)R + xR'),
/// starting from (c, R) = (alpha + n, 1). The weight factors divide out
/// exactly because the final exponent returns to alpha.
pub fn laguerre_rodrigues(n: usize, alpha: &Rat) -> Poly {
    let mut c = alpha + Rat::from_integer((n as i64).into());
    let mut r = Poly::one();
    for _ in 0..n {
        let coef = Poly::new(vec![c.clone(), -Rat::one()]);
        r = &(&coef * &r) + &(&Poly::eta() * &r.derive());
        c -= Rat::one();
    }
    debug_assert_eq!(&c, alpha);
    r.scale(&factorial(n).recip())
}

/// Jacobi ledger: d/dx [(1-x)^a (1+x)^b R]
///   = (1-x)^(a-1) (1+x)^(b-1) (-a(1+x)R + b(1-x)R + (1-x^2)R').
pub fn jacobi_rodrigues(n: usize, alpha: &Rat, beta: &Rat) -> Poly {
    let mut a = alpha + Rat::from_integer((n as i64).into());
    let mut b = beta + Rat::from_integer((n as i64).into());
    let mut r = Poly::one();
    let c2 = Poly::from_i64(&[1, 0, -1]);
    for _ in 0..n {
        let coef = Poly::new(vec![&b - &a, -(&a + &b)]);
        r = &(&coef * &r) + &(&c2 * &r.derive());
        a -= Rat::one();
        b -= Rat::one();
    }
    debug_assert_eq!(&a, alpha);
    let mut scale = factorial(n).recip();
    for _ in 0..n {
        scale /= rat(2, 1);
    }
    if n % 2 == 1 {
        scale = -scale;
    }
    r.scale(&scale)
}

/// Residuals of the standalone classical identities (index-shift identities
/// for Laguerre; parity and the six index-shift identities for Jacobi).
pub fn classical_identity_residuals(params: &ClassicalParams) -> Vec<(String, Poly)> {
    let n = params.n as i64;
    let one = Rat::one();
    let mut out = vec![];
    match params.kind {
        ClassicalKind::Laguerre => {
            let a = &params.alpha;
            // L_n^(a) - L_n^(a-1) = L_{n-1}^(a)
            let r1 = &(&laguerre_i(n, a) - &laguerre_i(n, &(a - &one))) - &laguerre_i(n - 1, a);
            out.push(("lagid1".to_string(), r1));
            // x L_{n-1}^(a+1) - a L_{n-1}^(a) = -n L_n^(a-1)
            let r2 = &(&(&Poly::eta() * &laguerre_i(n - 1, &(a + &one)))
                - &laguerre_i(n - 1, a).scale(a))
                + &laguerre_i(n, &(a - &one)).scale(&Rat::from_integer(n.into()));
            out.push(("lagid2".to_string(), r2));
        }
        ClassicalKind::Jacobi => {
            let a = &params.alpha;
            let b = params.beta.as_ref().unwrap();
            let two = rat(2, 1);
            let nf = Rat::from_integer(n.into());
            let omx = Poly::from_i64(&[1, -1]);
            let opx = Poly::from_i64(&[1, 1]);
            // parity: P_n^(a,b)(-x) = (-1)^n P_n^(b,a)(x)
            let mut parity =
                jacobi_i(n, a, b).compose_affine(&-Rat::one(), &Rat::zero());
            let mut mirror = jacobi_i(n, b, a);
            if n % 2 == 1 {
                mirror = mirror.scale(&-Rat::one());
            }
            parity = &parity - &mirror;
            out.push(("parity".to_string(), parity));
            // jid1: 2(n+b) P_n^(a,b-1) - 2b P_n^(a-1,b) = (n+a+b)(1+x) P_{n-1}^(a,b+1)
            let r = &(&jacobi_i(n, a, &(b - &one)).scale(&(&two * (&nf + b)))
                - &jacobi_i(n, &(a - &one), b).scale(&(&two * b)))
                - &(&opx * &jacobi_i(n - 1, a, &(b + &one))).scale(&(&nf + a + b));
            out.push(("jid1".to_string(), r));
            // jid2: (n+b)(1-x) P_{n-1}^(a+1,b) - a(1+x) P_{n-1}^(a,b+1) = -2n P_n^(a-1,b)
            let r = &(&(&omx * &jacobi_i(n - 1, &(a + &one), b)).scale(&(&nf + b))
                - &(&opx * &jacobi_i(n - 1, a, &(b + &one))).scale(a))
                + &jacobi_i(n, &(a - &one), b).scale(&(&two * &nf));
            out.push(("jid2".to_string(), r));
            // jid4: 2(a+n) P_{n-1}^(a,b) + (a+b+2n)(1-x)(P_n^(a,b) - P_n^(a+1,b-1)) = 2n P_n^(a,b)
            let r = &(&jacobi_i(n - 1, a, b).scale(&(&two * (&nf + a)))
                + &(&omx * &(&jacobi_i(n, a, b) - &jacobi_i(n, &(a + &one), &(b - &one))))
                    .scale(&(a + b + &two * &nf)))
                - &jacobi_i(n, a, b).scale(&(&two * &nf));
            out.push(("jid4".to_string(), r));
            // mirror images of the three above
            // jid1m: 2(n+a) P_n^(a-1,b) - 2a P_n^(a,b-1) = -(n+a+b)(1-x) P_{n-1}^(a+1,b)
            let r = &(&jacobi_i(n, &(a - &one), b).scale(&(&two * (&nf + a)))
                - &jacobi_i(n, a, &(b - &one)).scale(&(&two * a)))
                + &(&omx * &jacobi_i(n - 1, &(a + &one), b)).scale(&(&nf + a + b));
            out.push(("jid1m".to_string(), r));
            // jid2m: (n+a)(1+x) P_{n-1}^(a,b+1) - b(1-x) P_{n-1}^(a+1,b) = 2n P_n^(a,b-1)
            let r = &(&(&opx * &jacobi_i(n - 1, a, &(b + &one))).scale(&(&nf + a))
                - &(&omx * &jacobi_i(n - 1, &(a + &one), b)).scale(b))
                - &jacobi_i(n, a, &(b - &one)).scale(&(&two * &nf));
            out.push(("jid2m".to_string(), r));
            // jid4m: -2(b+n) P_{n-1}^(a,b) + (a+b+2n)(1+x)(P_n^(a,b) - P_n^(a-1,b+1)) = 2n P_n^(a,b)
            let r = &(&(&opx * &(&jacobi_i(n, a, b) - &jacobi_i(n, &(a - &one), &(b + &one))))
                .scale(&(a + b + &two * &nf))
                - &jacobi_i(n - 1, a, b).scale(&(&two * (&nf + b))))
                - &jacobi_i(n, a, b).scale(&(&two * &nf));
            out.push(("jid4m".to_string(), r));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// generating functions
// ---------------------------------------------------------------------------

/// Direct and closed-form expansions of a generating function; the contract
/// is exact coefficient-wise equality.
pub struct GenfunPair {
    pub direct: Series<Rat>,
    pub closed: Series<Rat>,
}

impl GenfunPair {
    /// Index of the first differing coefficient, if any.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..=self.direct.order()).find(|&k| self.direct.coeff(k) != self.closed.coeff(k))
    }
}

/// Closed form of sum t^n L_n^(alpha)(eta): e^{-t eta/(1-t)} (1-t)^{-(alpha+1)}.
pub fn laguerre_g_closed(alpha: &Rat, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let one_minus_t = Series::from_rat_coeffs('t', &[Rat::one(), -Rat::one()], order);
    let num = Series::linear('t', -eta.clone(), order);
    let arg = num.div(&one_minus_t)?;
    let e = arg.exp()?;
    let pw = one_minus_t.pow_rat(&-(alpha + Rat::one()))?;
    Ok(e.mul(&pw))
}

/// Closed form of d/d eta of the above: -t/(1-t) times the generating
/// function itself.
pub fn laguerre_dg_closed(alpha: &Rat, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let g = laguerre_g_closed(alpha, eta, order)?;
    let one_minus_t = Series::from_rat_coeffs('t', &[Rat::one(), -Rat::one()], order);
    let mt = Series::linear('t', -Rat::one(), order);
    Ok(mt.div(&one_minus_t)?.mul(&g))
}

/// R = sqrt(1 - 2 eta t + t^2) at rational eta.
pub fn jacobi_r_series(eta: &Rat, order: usize) -> Series<Rat> {
    Series::from_rat_coeffs('t', &[Rat::one(), -(eta + eta), Rat::one()], order)
        .sqrt()
        .expect("constant term 1 always has a square root")
}

/// Closed form of sum t^n P_n^(alpha,beta)(eta):
/// 2^(alpha+beta) / (R (1+R-t)^alpha (1+R+t)^beta), with the powers of two
/// folded into ((1+R-t)/2)^alpha ((1+R+t)/2)^beta to stay rational.
pub fn jacobi_g_closed(alpha: &Rat, beta: &Rat, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let r = jacobi_r_series(eta, order);
    let one = Series::one('t', order);
    let t = Series::linear('t', Rat::one(), order);
    let half = rat(1, 2);
    let u = one.add(&r).sub(&t).scale(&half);
    let v = one.add(&r).add(&t).scale(&half);
    let pu = u.pow_rat(&-alpha.clone())?;
    let pv = v.pow_rat(&-beta.clone())?;
    Ok(one.div(&r)?.mul(&pu).mul(&pv))
}

/// Closed form of d/d eta of the Jacobi generating function:
/// (t/R) (1/R + alpha/(1+R-t) + beta/(1+R+t)) G.
pub fn jacobi_dg_closed(alpha: &Rat, beta: &Rat, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let g = jacobi_g_closed(alpha, beta, eta, order)?;
    let r = jacobi_r_series(eta, order);
    let one = Series::one('t', order);
    let t = Series::linear('t', Rat::one(), order);
    let u = one.add(&r).sub(&t);
    let v = one.add(&r).add(&t);
    let term = one
        .div(&r)?
        .add(&one.scale(alpha).div(&u)?)
        .add(&one.scale(beta).div(&v)?);
    Ok(t.div(&r)?.mul(&term).mul(&g))
}

/// Direct sum sum_{n<=order} t^n P_n(eta) for the requested classical kind.
pub fn genfun_direct(params: &ClassicalParams, eta: &Rat, order: usize) -> Series<Rat> {
    let coeffs: Vec<Rat> = (0..=order)
        .map(|k| match params.kind {
            ClassicalKind::Laguerre => laguerre(k, &params.alpha).eval(eta),
            ClassicalKind::Jacobi => {
                jacobi(k, &params.alpha, params.beta.as_ref().unwrap()).eval(eta)
            }
        })
        .collect();
    Series::from_rat_coeffs('t', &coeffs, order)
}

/// Direct-vs-closed generating function pair for the base families.
pub fn genfun_classical(params: &ClassicalParams, eta: &Rat, order: usize) -> Result<GenfunPair> {
    let direct = genfun_direct(params, eta, order);
    let closed = match params.kind {
        ClassicalKind::Laguerre => laguerre_g_closed(&params.alpha, eta, order)?,
        ClassicalKind::Jacobi => {
            jacobi_g_closed(&params.alpha, params.beta.as_ref().unwrap(), eta, order)?
        }
    };
    Ok(GenfunPair { direct, closed })
}

/// sum t^n L_n^(alpha+n)(x) against its closed form
/// 2^alpha e^{-x (1-sqrt(1-4t))^2 / (4t)} / (sqrt(1-4t) (1+sqrt(1-4t))^alpha).
pub fn laguerre_genfun_rising(alpha: &Rat, eta: &Rat, order: usize) -> Result<GenfunPair> {
    let coeffs: Vec<Rat> = (0..=order)
        .map(|k| laguerre(k, &(alpha + Rat::from_integer((k as i64).into()))).eval(eta))
        .collect();
    let direct = Series::from_rat_coeffs('t', &coeffs, order);

    // work two orders higher so the division by t keeps full accuracy
    let n2 = order + 2;
    let root = Series::from_rat_coeffs('t', &[Rat::one(), rat(-4, 1)], n2).sqrt()?;
    let one = Series::one('t', n2);
    let w = one.sub(&root); // 1 - sqrt(1-4t), starts at t
    let arg = w
        .mul(&w)
        .shift_down(1)?
        .scale(&(-eta / rat(4, 1)));
    let e = arg.exp()?;
    // 2^alpha/(1+root)^alpha = ((1+root)/2)^(-alpha)
    let halfsum = one.add(&root).scale(&rat(1, 2));
    let closed = e
        .mul(&halfsum.pow_rat(&-alpha.clone())?)
        .div(&root)?
        .truncate(order);
    Ok(GenfunPair { direct, closed })
}

/// sum t^n L_n^(alpha-n)(x) = (1+t)^alpha e^{-t x}.
pub fn laguerre_genfun_falling(alpha: &Rat, eta: &Rat, order: usize) -> Result<GenfunPair> {
    let coeffs: Vec<Rat> = (0..=order)
        .map(|k| laguerre(k, &(alpha - Rat::from_integer((k as i64).into()))).eval(eta))
        .collect();
    let direct = Series::from_rat_coeffs('t', &coeffs, order);
    let opt = Series::from_rat_coeffs('t', &[Rat::one(), Rat::one()], order);
    let e = Series::linear('t', -eta.clone(), order).exp()?;
    let closed = opt.pow_rat(alpha)?.mul(&e);
    Ok(GenfunPair { direct, closed })
}

/// Report wrapper for a generating-function pair.
pub fn genfun_report(suite: &str, case: &str, pair: &GenfunPair) -> VerificationReport {
    let rep = VerificationReport::new(suite, case);
    match pair.first_mismatch() {
        None => rep.passed(),
        Some(k) => rep.failed(format!(
            "first mismatch at order {k}: direct {} vs closed {}",
            rat_to_string(pair.direct.coeff(k)),
            rat_to_string(pair.closed.coeff(k))
        )),
    }
}

// ---------------------------------------------------------------------------
// Jacobi -> Laguerre limit
// ---------------------------------------------------------------------------

/// Checks lim_{beta->inf} P_n^(alpha, +-beta)(1 - 2x/beta) = L_n^(alpha)(+-x)
/// by exact rational evaluation at each beta; the error must decay like
/// 1/beta (consecutive ratios within [half, double] of the step ratio).
pub fn limit_jacobi_to_laguerre(
    alpha: &Rat,
    n: usize,
    x: &Rat,
    betas: &[Rat],
    sign_plus: bool,
) -> VerificationReport {
    let rep = VerificationReport::new("classical", "jacobi-laguerre-limit")
        .with_n(n)
        .with_detail(format!(
            "alpha={} x={} sign={}",
            rat_to_string(alpha),
            rat_to_string(x),
            if sign_plus { "+" } else { "-" }
        ));
    let target = laguerre(n, alpha).eval(&if sign_plus { x.clone() } else { -x.clone() });
    let mut errs: Vec<Rat> = vec![];
    for beta in betas {
        let b = if sign_plus { beta.clone() } else { -beta.clone() };
        let arg = Rat::one() - (x + x) / beta;
        let v = jacobi(n, alpha, &b).eval(&arg);
        errs.push((v - &target).abs());
    }
    if errs.iter().all(|e| e.is_zero()) {
        return rep.passed();
    }
    for k in 0..errs.len() - 1 {
        if errs[k].is_zero() {
            return rep.failed(format!("error vanished at beta index {k} but not later"));
        }
        let ratio = rat_to_f64(&(&errs[k + 1] / &errs[k]));
        let ideal = rat_to_f64(&(&betas[k] / &betas[k + 1]));
        if !(ratio >= 0.5 * ideal && ratio <= 2.0 * ideal) {
            return rep.failed(format!(
                "non-convergent: error ratio {ratio:.4} outside [{:.4}, {:.4}]",
                0.5 * ideal,
                2.0 * ideal
            ));
        }
    }
    rep.passed()
}

#[cfg(test)]
mod tests;
