//! Exact generating-function checks for the X polynomials.
//!
//! The left side is the rational series sum_n t^n d0(n,lambda)
//! P_{ell,n}(eta); the right side is the closed form assembled from the
//! classical generating function and its eta-derivative through the Xi-map
//! structure. Equality is coefficient-wise exact. The double generating
//! functions (L1/L2) work in nested bivariate series.

use num::One;

use crate::error::Result;
use crate::exactnum::{rat, rat_to_string, BiSeries, Rat, Series};
use crate::report::VerificationReport;
use crate::xcore::{xi_at, xpoly_formal, Family, FamilyTable, Lambda, ParamSet};

/// LHS: sum_{n<=order} t^n d0(n,lambda) P_{ell,n}(eta), exact rationals.
pub fn genfun_direct(params: &ParamSet, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let t = FamilyTable::from_params(params);
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        // the sum extends formally past the hDPT bound-state cap
        let x = xpoly_formal(params, n)?;
        coeffs.push(x.poly.eval(eta) * t.d0(n as i64));
    }
    Ok(Series::from_rat_coeffs('t', &coeffs, order))
}

/// RHS: d1 xi(lambda+delta) G(t,eta;lambda') - d2 xi(lambda) dG(t,eta;lambda'),
/// with the classical G and dG in closed form.
pub fn genfun_closed(params: &ParamSet, eta: &Rat, order: usize) -> Result<Series<Rat>> {
    let t = FamilyTable::from_params(params);
    let lam_prime = params.lambda_prime();
    let (g, dg) = classical_g_pair(params.family, &lam_prime, eta, order)?;
    let xiu = xi_at(params.family, &params.lambda_at(1), params.ell).eval(eta);
    let xi0 = xi_at(params.family, &params.lambda, params.ell).eval(eta);
    let d2 = t.d2().eval(eta);
    Ok(g.scale(&(t.d1() * xiu)).sub(&dg.scale(&(d2 * xi0))))
}

fn classical_g_pair(
    family: Family,
    mu: &Lambda,
    eta: &Rat,
    order: usize,
) -> Result<(Series<Rat>, Series<Rat>)> {
    use crate::classical::{
        jacobi_dg_closed, jacobi_g_closed, laguerre_dg_closed, laguerre_g_closed,
    };
    match family.base_indices(mu) {
        (a, None) => Ok((
            laguerre_g_closed(&a, eta, order)?,
            laguerre_dg_closed(&a, eta, order)?,
        )),
        (a, Some(b)) => Ok((
            jacobi_g_closed(&a, &b, eta, order)?,
            jacobi_dg_closed(&a, &b, eta, order)?,
        )),
    }
}

/// Exact equality of the direct and closed generating functions.
pub fn genfun_x_check(params: &ParamSet, order: usize, eta: &Rat) -> VerificationReport {
    let rep = VerificationReport::new("genfun", "generating-function")
        .with_params(params)
        .with_detail(format!("eta={} order={order}", rat_to_string(eta)));
    let direct = match genfun_direct(params, eta, order) {
        Ok(s) => s,
        Err(e) => return rep.failed(e.to_string()),
    };
    let closed = match genfun_closed(params, eta, order) {
        Ok(s) => s,
        Err(e) => return rep.failed(e.to_string()),
    };
    match (0..=order).find(|&k| direct.coeff(k) != closed.coeff(k)) {
        None => rep.passed(),
        Some(k) => rep.failed(format!(
            "first mismatch at t^{k}: direct {} vs closed {}",
            rat_to_string(direct.coeff(k)),
            rat_to_string(closed.coeff(k))
        )),
    }
}

/// LHS of the double generating function:
/// sum_l s^l sum_n t^n d0(n) P_{l,n}(eta).
pub fn double_genfun_direct(
    family: Family,
    g: &Rat,
    eta: &Rat,
    s_order: usize,
    t_order: usize,
) -> Result<BiSeries> {
    let mut rows = Vec::with_capacity(s_order + 1);
    for ell in 0..=s_order {
        let params = ParamSet {
            family,
            lambda: Lambda::l(g.clone()),
            ell,
        };
        rows.push(genfun_direct(&params, eta, t_order)?);
    }
    Ok(BiSeries::from_coeffs('s', rows, s_order))
}

/// Closed form of the L1 double generating function, rewritten with
/// rational-safe powers of two and the exponential argument
/// -t eta/(1-t) + 4 s eta / (A+B)^2 where A = sqrt(1-t), B = sqrt(1-t-4s):
///   (1/2) ((2-t) A + t B) e^{...} / (B A^(g+3/2) ((A+B)/2)^(g-1/2)).
pub fn double_genfun_closed_l1(
    g: &Rat,
    eta: &Rat,
    s_order: usize,
    t_order: usize,
) -> Result<BiSeries> {
    let one_t = Series::one('t', t_order);
    let t_t = Series::linear('t', Rat::one(), t_order);
    let bi = |c: Series<Rat>| BiSeries::bi_constant(c, s_order);

    let t = bi(t_t.clone());
    let a = bi(one_t.sub(&t_t).sqrt()?);
    let b = BiSeries::from_coeffs(
        's',
        vec![one_t.sub(&t_t), Series::constant('t', rat(-4, 1), t_order)],
        s_order,
    )
    .sqrt()?;
    let apb = a.add(&b);

    let exp_arg = {
        let first = bi(Series::linear('t', -eta.clone(), t_order).div(&one_t.sub(&t_t))?);
        let s_num =
            BiSeries::bi_linear_s(Series::constant('t', rat(4, 1) * eta, t_order), s_order);
        first.add(&s_num.div(&apb.mul(&apb))?)
    };
    let e = exp_arg.exp()?;

    let two = Series::constant('t', rat(2, 1), t_order);
    let num = bi(two.sub(&t_t)).mul(&a).add(&t.mul(&b)).scale(&rat(1, 2));
    let den = b
        .mul(&a.pow_rat(&(g + rat(3, 2)))?)
        .mul(&apb.scale(&rat(1, 2)).pow_rat(&(g - rat(1, 2)))?);
    num.mul(&e).div(&den)
}

/// Closed form of the L2 double generating function (d0-weighted):
///   (g + 1/2 - t (1-t+s) eta/(1-t)^2) e^{-(s+t) eta/(1-t)} / (1-t+s)^(g+3/2).
pub fn double_genfun_closed_l2(
    g: &Rat,
    eta: &Rat,
    s_order: usize,
    t_order: usize,
) -> Result<BiSeries> {
    let one_t = Series::one('t', t_order);
    let t_t = Series::linear('t', Rat::one(), t_order);
    let omt = one_t.sub(&t_t);
    let bi = |c: Series<Rat>| BiSeries::bi_constant(c, s_order);

    let s = BiSeries::bi_linear_s(one_t.clone(), s_order);
    let omts = bi(omt.clone()).add(&s); // 1 - t + s

    let exp_arg = {
        let st = s.add(&bi(t_t.clone()));
        st.scale_coeff(&one_t.scale(&-eta.clone()).div(&omt)?)
    };
    let e = exp_arg.exp()?;

    let prefix = {
        let ghalf = bi(Series::constant('t', g + rat(1, 2), t_order));
        let frac = bi(t_t.scale(eta).div(&omt.mul(&omt))?);
        ghalf.sub(&frac.mul(&omts))
    };
    prefix.mul(&e).div(&omts.pow_rat(&(g + rat(3, 2)))?)
}

/// Exact check of the double generating function for L1 or L2.
pub fn double_genfun_check(
    family: Family,
    g: &Rat,
    s_order: usize,
    t_order: usize,
    eta: &Rat,
) -> VerificationReport {
    let rep =
        VerificationReport::new("genfun", "double-generating-function").with_detail(format!(
            "{family} g={} eta={} orders=({s_order},{t_order})",
            rat_to_string(g),
            rat_to_string(eta)
        ));
    if !matches!(family, Family::L1 | Family::L2) {
        return rep.skip("double generating functions cover L1 and L2 only");
    }
    let direct = match double_genfun_direct(family, g, eta, s_order, t_order) {
        Ok(s) => s,
        Err(e) => return rep.failed(e.to_string()),
    };
    let closed = match family {
        Family::L1 => double_genfun_closed_l1(g, eta, s_order, t_order),
        _ => double_genfun_closed_l2(g, eta, s_order, t_order),
    };
    let closed = match closed {
        Ok(s) => s,
        Err(e) => return rep.failed(e.to_string()),
    };
    for l in 0..=s_order {
        for k in 0..=t_order {
            if direct.bi_coeff(l, k) != closed.bi_coeff(l, k) {
                return rep.failed(format!(
                    "first mismatch at s^{l} t^{k}: direct {} vs closed {}",
                    rat_to_string(direct.bi_coeff(l, k)),
                    rat_to_string(closed.bi_coeff(l, k))
                ));
            }
        }
    }
    rep.passed()
}

/// Evaluation helper shared with the CLI `genfun` subcommand: the exact
/// d0-weighted coefficient list of the generating function at eta.
pub fn genfun_coefficients(params: &ParamSet, eta: &Rat, order: usize) -> Result<Vec<Rat>> {
    Ok(genfun_direct(params, eta, order)?.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::xcore::ALL_FAMILIES;

    fn ps(family: Family, g: (i64, i64), h: Option<(i64, i64)>, ell: usize) -> ParamSet {
        ParamSet::new(family, rat(g.0, g.1), h.map(|(n, d)| rat(n, d)), ell).unwrap()
    }

    #[test]
    fn ell_zero_reduces_to_classical() {
        // L1 at ell = 0 is the plain Laguerre generating function (d0 = 1)
        let p = ps(Family::L1, (1, 1), None, 0);
        let rep = genfun_x_check(&p, 6, &rat(1, 2));
        assert!(rep.pass, "{}", rep.detail);
    }

    #[test]
    fn genfun_all_families() {
        for fam in ALL_FAMILIES {
            for ell in 0..3usize {
                let p = match fam {
                    Family::L1 | Family::L2 => ps(fam, (1, 1), None, ell),
                    Family::J1 => ps(fam, (5, 2), Some((3, 2)), ell),
                    Family::J2 => ps(fam, (1, 1), Some((3, 1)), ell),
                    Family::Hdpt => ps(fam, (1, 1), Some((16, 1)), ell),
                };
                let rep = genfun_x_check(&p, 6, &rat(1, 3));
                assert!(rep.pass, "{}: {}", p.describe(), rep.detail);
            }
        }
    }

    #[test]
    fn genfun_spec_cases() {
        let rep = genfun_x_check(&ps(Family::L1, (1, 1), None, 1), 6, &rat(1, 2));
        assert!(rep.pass, "{}", rep.detail);
        let rep = genfun_x_check(&ps(Family::J2, (1, 1), Some((3, 1)), 1), 5, &rat(1, 3));
        assert!(rep.pass, "{}", rep.detail);
    }

    #[test]
    fn double_genfun_s0_row_is_classical() {
        // the s^0 slice of the L1 double generating function must be the
        // classical Laguerre generating function at alpha = g - 1/2
        let g = rat(1, 1);
        let eta = rat(1, 3);
        let closed = double_genfun_closed_l1(&g, &eta, 2, 5).unwrap();
        let classical = crate::classical::laguerre_g_closed(&rat(1, 2), &eta, 5).unwrap();
        assert_eq!(closed.coeff(0), &classical);
    }

    #[test]
    fn double_genfun_l1_exact() {
        let rep = double_genfun_check(Family::L1, &rat(1, 1), 2, 3, &rat(1, 3));
        assert!(rep.pass, "{}", rep.detail);
    }

    #[test]
    fn double_genfun_l2_exact() {
        let rep = double_genfun_check(Family::L2, &rat(1, 1), 2, 4, &rat(1, 2));
        assert!(rep.pass, "{}", rep.detail);
    }
}
