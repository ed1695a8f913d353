//! Weight-function data and the root-free-divisor guarantee.

use num::{One, Signed, Zero};

use crate::analysis::mp::{rat_to_f64, Mp};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Poly, Rat};

use super::{xi, Family, Lambda, ParamSet};

/// Orthogonality domain of a family: (0,inf) L, (-1,1) J, (1,inf) hDPT.
pub fn domain(family: Family) -> (Rat, Option<Rat>) {
    match family {
        Family::L1 | Family::L2 => (Rat::zero(), None),
        Family::J1 | Family::J2 => (-Rat::one(), Some(Rat::one())),
        Family::Hdpt => (Rat::one(), None),
    }
}

/// The base classical weight W(eta; lambda_eff) with lambda_eff = lambda +
/// ell*delta; the full X weight divides this by xi_ell(eta; lambda)^2.
/// The power-of-two prefactor is kept as a logarithm since g, h are
/// arbitrary rationals.
#[derive(Clone, Debug)]
pub struct WeightDescriptor {
    pub family: Family,
    pub lambda_eff: Lambda,
    pub log2_prefactor: Rat,
}

impl WeightDescriptor {
    pub fn new(family: Family, lambda_eff: Lambda) -> Self {
        let log2_prefactor = match family {
            Family::L1 | Family::L2 => -Rat::one(),
            Family::J1 | Family::J2 => -(&lambda_eff.g + lambda_eff.h() + Rat::one()),
            Family::Hdpt => -(&lambda_eff.g - lambda_eff.h() + Rat::one()),
        };
        WeightDescriptor {
            family,
            lambda_eff,
            log2_prefactor,
        }
    }

    /// Evaluates the base weight at a point inside the domain.
    pub fn eval_mp(&self, eta: &Mp) -> Mp {
        let half = rat(1, 2);
        let two = Mp::from_i64(2);
        let pref = two.pow(&Mp::from_rat(&self.log2_prefactor));
        match self.family {
            Family::L1 | Family::L2 => {
                let a = Mp::from_rat(&(&self.lambda_eff.g - &half));
                let p = eta.pow(&a);
                &(&pref * &p) * &(-eta).exp()
            }
            Family::J1 | Family::J2 => {
                let a = Mp::from_rat(&(&self.lambda_eff.g - &half));
                let b = Mp::from_rat(&(self.lambda_eff.h() - &half));
                let one = Mp::one();
                let u = (&one - eta).pow(&a);
                let v = (&one + eta).pow(&b);
                &(&pref * &u) * &v
            }
            Family::Hdpt => {
                let a = Mp::from_rat(&(&self.lambda_eff.g - &half));
                let b = Mp::from_rat(&(-self.lambda_eff.h() - &half));
                let one = Mp::one();
                let u = (eta - &one).pow(&a);
                let v = (eta + &one).pow(&b);
                &(&pref * &u) * &v
            }
        }
    }
}

/// Returns the base weight descriptor at lambda + ell*delta together with
/// the squared divisor xi_ell(eta; lambda), after verifying that the divisor
/// has no root in the (closed) orthogonality domain.
pub fn weight_factor(params: &ParamSet) -> Result<(WeightDescriptor, Poly)> {
    params.require_paper_range()?;
    let divisor = xi(params);
    let (lo, hi) = domain(params.family);
    if let Some(root) = root_in_domain(&divisor, &lo, hi.as_ref()) {
        return Err(Error::XiRootInDomain { root });
    }
    let desc = WeightDescriptor::new(params.family, params.lambda_at(params.ell as i64));
    Ok((desc, divisor))
}

/// Exact check for a root of p inside [lo, hi] (hi = None means +infinity),
/// via Sturm's theorem; if one exists, returns an approximate location for
/// the error report.
pub fn root_in_domain(p: &Poly, lo: &Rat, hi: Option<&Rat>) -> Option<f64> {
    if p.degree().map_or(true, |d| d == 0) {
        return None;
    }
    if p.eval(lo).is_zero() {
        return Some(rat_to_f64(lo));
    }
    if let Some(h) = hi {
        if p.eval(h).is_zero() {
            return Some(rat_to_f64(h));
        }
    }
    let chain = sturm_chain(p);
    let count = match hi {
        Some(h) => sign_changes_at(&chain, lo) - sign_changes_at(&chain, h),
        None => sign_changes_at(&chain, lo) - sign_changes_at_pos_inf(&chain),
    };
    if count == 0 {
        return None;
    }
    // localize one root by bisection on the Sturm count
    let mut a = lo.clone();
    let mut b = match hi {
        Some(h) => h.clone(),
        None => upper_root_bound(p).max(lo + Rat::one()),
    };
    for _ in 0..80 {
        let mid = (&a + &b) / rat(2, 1);
        if p.eval(&mid).is_zero() {
            return Some(rat_to_f64(&mid));
        }
        let left = sign_changes_at(&chain, &a) - sign_changes_at(&chain, &mid);
        if left > 0 {
            b = mid;
        } else {
            a = mid;
        }
        if rat_to_f64(&(&b - &a)) < 1e-12 {
            break;
        }
    }
    Some(rat_to_f64(&((&a + &b) / rat(2, 1))))
}

/// Cauchy bound 1 + max |c_k / c_lead| on the absolute value of any root.
fn upper_root_bound(p: &Poly) -> Rat {
    let lc = p.leading_coeff();
    let mut m = Rat::zero();
    for c in p.coeffs() {
        let r = (c / &lc).abs();
        if r > m {
            m = r;
        }
    }
    m + Rat::one()
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    // squarefree part keeps the chain well-behaved on multiple roots
    let sf = p.divexact(&p.gcd(&p.derive())).expect("gcd divides");
    let mut chain = vec![sf.clone(), sf.derive()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() || chain[k - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

fn sign_changes_at(chain: &[Poly], x: &Rat) -> usize {
    count_changes(chain.iter().map(|p| sign_of(&p.eval(x))))
}

fn sign_changes_at_pos_inf(chain: &[Poly]) -> usize {
    count_changes(chain.iter().map(|p| sign_of(&p.leading_coeff())))
}
