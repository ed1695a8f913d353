//! The three-term-recurrence substitute: the image of eta P_n(eta; lambda')
//! under the Xi-map expands exactly over three consecutive X polynomials
//! with the classical recurrence coefficients at lambda'.

use crate::classical::{classical_p, recurrence_coeffs, ClassicalParams};
use crate::error::Error;
use crate::exactnum::Poly;
use crate::report::VerificationReport;
use crate::xcore::{xi_map, xpoly_formal, FamilyTable, ParamSet};

/// Exact identity Xi[eta P_n(lambda')] = A_n d0(n+1) P_{l,n+1}
/// + B_n d0(n) P_{l,n} + C_n d0(n-1) P_{l,n-1}; at n = 0 the C term is
/// absent through P_{l,-1} = 0.
pub fn recurrence_substitute_check(params: &ParamSet, n: usize) -> VerificationReport {
    let rep = VerificationReport::new("recurrence", "three-term-substitute")
        .with_params(params)
        .with_n(n);
    let t = FamilyTable::from_params(params);
    let lam_prime = params.lambda_prime();
    let (a, b) = params.family.base_indices(&lam_prime);
    let cp = match b {
        None => ClassicalParams::laguerre(n, a),
        Some(b) => ClassicalParams::jacobi(n, a, b),
    };
    let rc = match recurrence_coeffs(&cp) {
        Ok(rc) => rc,
        Err(e @ Error::DegenerateRecurrence(_)) => return rep.skip(e.to_string()),
        Err(e) => return rep.failed(e.to_string()),
    };

    let base = classical_p(params.family, n, &lam_prime);
    let lhs = xi_map(params, &(&Poly::eta() * &base));

    let xp = |k: usize| xpoly_formal(params, k).map(|x| x.poly);
    let p_up = match xp(n + 1) {
        Ok(p) => p,
        Err(e) => return rep.failed(e.to_string()),
    };
    let p_mid = match xp(n) {
        Ok(p) => p,
        Err(e) => return rep.failed(e.to_string()),
    };
    let p_dn = if n == 0 {
        Poly::zero()
    } else {
        match xp(n - 1) {
            Ok(p) => p,
            Err(e) => return rep.failed(e.to_string()),
        }
    };

    let rhs = &(&p_up.scale(&(&rc.a * t.d0(n as i64 + 1))) + &p_mid.scale(&(&rc.b * t.d0(n as i64))))
        + &p_dn.scale(&(&rc.c * t.d0(n as i64 - 1)));
    rep.residual_poly(&(&lhs - &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::xcore::{Family, ALL_FAMILIES};

    fn ps(family: Family, g: (i64, i64), h: Option<(i64, i64)>, ell: usize) -> ParamSet {
        ParamSet::new(family, rat(g.0, g.1), h.map(|(n, d)| rat(n, d)), ell).unwrap()
    }

    #[test]
    fn classical_limit_and_deformed_cases() {
        // ell = 0 reduces to the classical three-term recurrence
        let rep = recurrence_substitute_check(&ps(Family::L1, (1, 1), None, 0), 2);
        assert!(rep.pass, "{}", rep.detail);
        // spec cases
        let rep = recurrence_substitute_check(&ps(Family::L1, (1, 1), None, 1), 1);
        assert!(rep.pass, "{}", rep.detail);
        let rep = recurrence_substitute_check(&ps(Family::J1, (3, 1), Some((1, 1)), 2), 2);
        assert!(rep.pass, "{}", rep.detail);
    }

    #[test]
    fn full_family_sweep() {
        for fam in ALL_FAMILIES {
            for ell in 0..3 {
                for n in 0..4 {
                    let p = match fam {
                        Family::L1 | Family::L2 => ps(fam, (5, 2), None, ell),
                        Family::J1 => ps(fam, (2, 1), Some((1, 2)), ell),
                        Family::J2 => ps(fam, (1, 2), Some((3, 2)), ell),
                        Family::Hdpt => ps(fam, (1, 1), Some((18, 1)), ell),
                    };
                    let rep = recurrence_substitute_check(&p, n);
                    assert!(
                        rep.pass,
                        "{} n={n}: {} {:?}",
                        p.describe(),
                        rep.detail,
                        rep.residual
                    );
                }
            }
        }
    }

    #[test]
    fn hdpt_degenerate_coefficients_are_skipped() {
        // at n + ell = n_B the Jacobi recurrence denominator vanishes
        let p = ps(Family::Hdpt, (1, 1), Some((16, 1)), 3); // n_B = 7
        let rep = recurrence_substitute_check(&p, 4);
        assert!(rep.skipped, "expected a skip, got: {}", rep.detail);
    }
}
