use super::*;
use crate::classical::laguerre;
use crate::exactnum::rat;

fn q(n: i64, d: i64) -> Rat {
    rat(n, d)
}

fn ps(family: Family, g: (i64, i64), h: Option<(i64, i64)>, ell: usize) -> ParamSet {
    ParamSet::new(
        family,
        q(g.0, g.1),
        h.map(|(n, d)| q(n, d)),
        ell,
    )
    .unwrap()
}

#[test]
fn xi_low_orders() {
    // xi_0 = 1 for every family
    for fam in ALL_FAMILIES {
        let p = match fam {
            Family::L1 | Family::L2 => ps(fam, (1, 1), None, 0),
            _ => ps(fam, (1, 1), Some((3, 1)), 0),
        };
        assert_eq!(xi(&p), Poly::one(), "family {fam}");
    }
    // L1, ell=1: eta + g + 1/2
    let p = ps(Family::L1, (5, 2), None, 1);
    assert_eq!(xi(&p), Poly::new(vec![q(3, 1), q(1, 1)]));
    // J1, ell=1: (g+1/2) - (g-h)(1-eta)/2
    let p = ps(Family::J1, (1, 1), Some((1, 2)), 1);
    let expect = &Poly::constant(q(3, 2))
        - &Poly::new(vec![q(1, 2), q(-1, 2)]).scale(&q(1, 2));
    assert_eq!(xi(&p), expect);
}

#[test]
fn xi_map_cases() {
    // p = 1 kills the derivative term
    let p = ps(Family::J2, (1, 1), Some((3, 1)), 2);
    let t = FamilyTable::from_params(&p);
    assert_eq!(
        xi_map(&p, &Poly::one()),
        xi_at(p.family, &p.lambda_at(1), p.ell).scale(&t.d1())
    );
    // ell = 0, L1: p - p'
    let p = ps(Family::L1, (7, 3), None, 0);
    let probe = Poly::from_i64(&[1, 4, -2, 7]);
    assert_eq!(xi_map(&p, &probe), &probe - &probe.derive());
    // L1, ell=1, g=1 on L_1^(1/2): hand-expanded (eta+5/2)(3/2-eta) + (eta+3/2)
    let p = ps(Family::L1, (1, 1), None, 1);
    let base = laguerre(1, &q(1, 2));
    assert_eq!(xi_map(&p, &base), Poly::new(vec![q(21, 4), q(0, 1), q(-1, 1)]));
}

#[test]
fn xpoly_oracles() {
    // n = 0 collapses to xi(lambda + delta) for every family
    for fam in ALL_FAMILIES {
        let p = match fam {
            Family::L1 | Family::L2 => ps(fam, (5, 2), None, 3),
            _ => ps(fam, (3, 2), Some((25, 2)), 3),
        };
        let x = xpoly(&p, 0).unwrap();
        assert_eq!(x.poly, xi_at(fam, &p.lambda_at(1), p.ell), "family {fam}");
    }
    // ell = 0 reproduces the undeformed classical polynomial
    for fam in ALL_FAMILIES {
        let p = match fam {
            Family::L1 | Family::L2 => ps(fam, (1, 1), None, 0),
            _ => ps(fam, (1, 1), Some((16, 1)), 0),
        };
        for n in 0..4 {
            let x = xpoly(&p, n).unwrap();
            assert_eq!(
                x.poly,
                crate::classical::classical_p(fam, n, &p.lambda),
                "family {fam} n {n}"
            );
        }
    }
    // hand-expanded lowest nontrivial cases
    let x = xpoly(&ps(Family::L1, (1, 1), None, 1), 1).unwrap();
    assert_eq!(x.poly, Poly::new(vec![q(21, 4), q(0, 1), q(-1, 1)]));
    let x = xpoly(&ps(Family::L2, (1, 1), None, 1), 1).unwrap();
    assert_eq!(x.poly, Poly::new(vec![q(-21, 4), q(0, 1), q(1, 1)]));
}

#[test]
fn xpoly_degree_sweep() {
    for fam in ALL_FAMILIES {
        // hDPT needs h - g large enough to keep n <= n_B - ell in the sweep
        let p0 = match fam {
            Family::L1 | Family::L2 => ps(fam, (1, 2), None, 0),
            Family::J1 => ps(fam, (9, 2), Some((1, 2)), 0),
            _ => ps(fam, (1, 2), Some((16, 1)), 0),
        };
        for ell in 0..4 {
            let p = ParamSet { ell, ..p0.clone() };
            for n in 0..5 {
                let x = xpoly(&p, n).unwrap();
                assert_eq!(x.poly.degree(), Some(ell + n), "family {fam} ell {ell} n {n}");
            }
        }
    }
}

#[test]
fn degenerate_d0_outside_ranges() {
    // L2 d0 = n + g + 1/2 vanishes at g = -3/2, n = 1
    let p = ParamSet {
        family: Family::L2,
        lambda: Lambda::l(q(-3, 2)),
        ell: 1,
    };
    match xpoly_formal(&p, 1) {
        Err(Error::DegenerateD0(1)) => {}
        other => panic!("expected DegenerateD0, got {other:?}"),
    }
}

#[test]
fn hdpt_bound_state_edges() {
    // (h-g)/2 = 15/2 non-integer: n_B = 7
    let p = ps(Family::Hdpt, (1, 1), Some((16, 1)), 1);
    assert_eq!(p.n_b(), Some(7));
    assert_eq!(p.n_max(), Some(6));
    // (h-g)/2 = 8 integer: n_B = 7 by the strict bracket
    let p = ps(Family::Hdpt, (1, 1), Some((17, 1)), 1);
    assert_eq!(p.n_b(), Some(7));
    let rep = hdpt_bound_check(&p);
    assert!(rep.pass, "{}", rep.detail);
    match xpoly(&p, 7) {
        Err(Error::BoundStateExceeded { n: 7, max: 6 }) => {}
        other => panic!("expected BoundStateExceeded, got {other:?}"),
    }
}

#[test]
fn xi_diffeq_all_families() {
    for fam in ALL_FAMILIES {
        for ell in 0..4 {
            let p = match fam {
                Family::L1 | Family::L2 => ps(fam, (5, 2), None, ell),
                _ => ps(fam, (3, 2), Some((13, 2)), ell),
            };
            let rep = xi_diffeq_check(&p);
            assert!(rep.pass, "family {fam} ell {ell}: {}", rep.detail);
        }
    }
}

#[test]
fn mirror_symmetry() {
    for (g, h, ell, n) in [((1, 1), (3, 1), 1, 1), ((1, 2), (2, 1), 2, 3), ((5, 2), (7, 2), 3, 2)] {
        let p = ps(Family::J2, g, Some(h), ell);
        let rep = mirror_check(&p, n);
        assert!(rep.pass, "{}: {}", p.describe(), rep.detail);
    }
}

#[test]
fn weight_factor_cases() {
    // L1, ell=0: base exponent g - 1/2, divisor 1
    let (desc, div) = weight_factor(&ps(Family::L1, (1, 1), None, 0)).unwrap();
    assert_eq!(desc.lambda_eff, Lambda::l(q(1, 1)));
    assert_eq!(div, Poly::one());
    // L1, ell=1, g=1: base W(eta; 2), divisor eta + 3/2 (root-free on (0,inf))
    let (desc, div) = weight_factor(&ps(Family::L1, (1, 1), None, 1)).unwrap();
    assert_eq!(desc.lambda_eff, Lambda::l(q(2, 1)));
    assert_eq!(div, Poly::new(vec![q(3, 2), q(1, 1)]));
    // J weight prefactor log2 = -(g+h+1) at lambda_eff
    let (desc, _) = weight_factor(&ps(Family::J2, (1, 1), Some((3, 1)), 0)).unwrap();
    assert_eq!(desc.log2_prefactor, q(-5, 1));
    // out-of-range parameters refuse
    assert!(weight_factor(&ps(Family::J1, (1, 1), Some((3, 1)), 1)).is_err());
}

#[test]
fn norm_values() {
    // h_0(g=1), ell=0: Gamma(3/2)/2 = sqrt(pi)/4
    let nv = norm(&ps(Family::L1, (1, 1), None, 0), 0).unwrap();
    assert_eq!(nv.symbolic.to_string(), "1/4*sqrt(pi)");
    assert!((nv.float - 0.44311346272637900).abs() < 1e-12);
    // L1, ell=1, n=1, g=1: 21 sqrt(pi) / 16
    let nv = norm(&ps(Family::L1, (1, 1), None, 1), 1).unwrap();
    assert_eq!(nv.symbolic.to_string(), "21/16*sqrt(pi)");
    // J, ell=0, n=0, g=h=1: pi/16
    let nv = norm(&ps(Family::J1, (1, 1), Some((1, 1)), 0), 0);
    // g = h = 1 is outside the strict J1 range g > h; use the formal value
    assert!(nv.is_err());
    let sym = h_xell(&ps(Family::J1, (1, 1), Some((1, 1)), 0), 0);
    assert_eq!(sym.to_string(), "1/16*pi");
}

#[test]
fn original_j2_equals_new_form() {
    // ell=1, n=0: reduces to xi_1(g+1, h+1)
    let p = ps(Family::J2, (1, 1), Some((3, 1)), 1);
    let orig = xpoly_original_j2(&p, 0).unwrap();
    assert_eq!(orig.poly, xi_at(Family::J2, &p.lambda_at(1), 1));
    // ell=2, n=1, g=1, h=3
    let p = ps(Family::J2, (1, 1), Some((3, 1)), 2);
    assert_eq!(xpoly_original_j2(&p, 1).unwrap().poly, xpoly(&p, 1).unwrap().poly);
    // ell=1, n=2, g=1/2, h=2
    let p = ps(Family::J2, (1, 2), Some((2, 1)), 1);
    assert_eq!(xpoly_original_j2(&p, 2).unwrap().poly, xpoly(&p, 2).unwrap().poly);
    // J2 only
    assert!(xpoly_original_j2(&ps(Family::J1, (2, 1), Some((1, 1)), 2), 1).is_err());
}

#[test]
fn structure_reports() {
    let p = ps(Family::J1, (5, 2), Some((1, 2)), 2);
    for n in 0..4 {
        let rep = structure_check(&p, n);
        assert!(rep.pass, "{}", rep.detail);
    }
}
