use super::*;
use crate::report::all_passed;
use crate::xcore::Family;

fn q(n: i64, d: i64) -> Rat {
    rat(n, d)
}

#[test]
fn laguerre_low_orders() {
    // n = 0 is the constant 1 for any alpha
    assert_eq!(laguerre(0, &q(7, 3)), Poly::one());
    // n = 1: (alpha + 1) - x
    let a = q(5, 2);
    assert_eq!(laguerre(1, &a), Poly::new(vec![q(7, 2), q(-1, 1)]));
    // n = 2, alpha = 0: 1 - 2x + x^2/2 (brute expansion of the sum)
    assert_eq!(
        laguerre(2, &q(0, 1)),
        Poly::new(vec![q(1, 1), q(-2, 1), q(1, 2)])
    );
}

#[test]
fn laguerre_degree_and_leading() {
    let mut fact = Rat::one();
    for n in 0..9usize {
        if n > 0 {
            fact *= Rat::from_integer((n as i64).into());
        }
        let p = laguerre(n, &q(-7, 3));
        assert_eq!(p.degree(), Some(n));
        let lead = if n % 2 == 0 {
            fact.recip()
        } else {
            -fact.recip()
        };
        assert_eq!(p.leading_coeff(), lead);
    }
}

#[test]
fn jacobi_low_orders_and_parity() {
    assert_eq!(jacobi(0, &q(3, 1), &q(-9, 2)), Poly::one());
    // n = 1: (alpha+1) - (alpha+beta+2)(1-x)/2
    let (a, b) = (q(1, 3), q(2, 5));
    let expect = &Poly::constant(&a + Rat::one())
        - &Poly::new(vec![q(1, 2), q(-1, 2)]).scale(&(&a + &b + q(2, 1)));
    assert_eq!(jacobi(1, &a, &b), expect);
    // parity at n = 2, alpha = beta = 0
    let p = jacobi(2, &q(0, 1), &q(0, 1));
    assert_eq!(p.compose_affine(&q(-1, 1), &q(0, 1)), p);
}

#[test]
fn jacobi_degenerate_flag() {
    // at alpha = beta = -3/2, n = 2 the leading Pochhammer (0)_2 vanishes
    assert!(jacobi_is_degenerate(2, &q(-3, 2), &q(-3, 2)));
    assert!(!jacobi_is_degenerate(2, &q(1, 2), &q(1, 3)));
    // the degenerate polynomial still comes out of the expanded sum
    let p = jacobi(2, &q(-3, 2), &q(-3, 2));
    assert_eq!(p, Poly::constant(q(-1, 8)));
}

#[test]
fn classical_p_dictionaries() {
    use crate::xcore::Lambda;
    // L, n=1, g=1 -> L_1^(1/2) = 3/2 - eta
    let p = classical_p(Family::L1, 1, &Lambda::l(q(1, 1)));
    assert_eq!(p, Poly::new(vec![q(3, 2), q(-1, 1)]));
    // J, n=0 -> 1
    let p = classical_p(Family::J1, 0, &Lambda::j(q(1, 1), q(1, 2)));
    assert_eq!(p, Poly::one());
    // hDPT, n=1, g=1, h=4 -> P_1^(1/2, -9/2)
    let p = classical_p(Family::Hdpt, 1, &Lambda::j(q(1, 1), q(4, 1)));
    assert_eq!(p, jacobi(1, &q(1, 2), &q(-9, 2)));
}

#[test]
fn shift_relations_hold() {
    for params in [
        ClassicalParams::laguerre(3, q(1, 2)),
        ClassicalParams::laguerre(1, q(0, 1)),
        ClassicalParams::jacobi(2, q(3, 2), q(-7, 2)),
        ClassicalParams::jacobi(5, q(-13, 3), q(9, 4)),
    ] {
        let rep = classical_shift_check(&params);
        assert!(rep.pass, "{}: {}", rep.detail, rep.case);
    }
}

#[test]
fn forward_then_backward_reproduces_n() {
    // Laguerre: applying the backward operator to dL_n/dx gives -n L_n
    let (n, a) = (4usize, q(2, 3));
    let ln = laguerre(n, &a);
    let d = ln.derive();
    let coef = Poly::new(vec![&a + Rat::one(), q(-1, 1)]);
    let back = &(&Poly::eta() * &d.derive()) + &(&coef * &d);
    assert_eq!(back, ln.scale(&-Rat::from_integer((n as i64).into())));

    // Jacobi: the pairing carries -2n against (n+alpha+beta+1)/2
    let (n, a, b) = (3usize, q(1, 2), q(5, 3));
    let pn = jacobi(n, &a, &b);
    let d = pn.derive();
    let c2 = Poly::from_i64(&[1, 0, -1]);
    let coef = Poly::new(vec![&b - &a, -(&a + &b + q(2, 1))]);
    let back = &(&c2 * &d.derive()) + &(&coef * &d);
    let f = (&a + &b + Rat::from_integer((n as i64 + 1).into())) / q(2, 1);
    let expect = pn.scale(&(-Rat::from_integer((2 * n as i64).into()) * &f));
    assert_eq!(back, expect);
}

#[test]
fn suite_passes_on_sample_grid() {
    let mut cases = vec![
        ClassicalParams::laguerre(2, q(1, 2)),
        ClassicalParams::laguerre(0, q(5, 2)),
        ClassicalParams::laguerre(6, q(-9, 4)),
        ClassicalParams::jacobi(2, q(1, 1), q(2, 1)),
        ClassicalParams::jacobi(0, q(1, 2), q(3, 2)),
        ClassicalParams::jacobi(5, q(-7, 2), q(11, 3)),
    ];
    for n in 0..5 {
        cases.push(ClassicalParams::laguerre(n, q(3, 2)));
        cases.push(ClassicalParams::jacobi(n, q(1, 3), q(1, 3)));
    }
    for c in cases {
        let reports = classical_suite(&c);
        assert!(all_passed(&reports), "failed: {}", c.describe());
    }
}

#[test]
fn recurrence_coefficient_values() {
    // Laguerre n=1, alpha=0: A=-2, B=3, C=-1
    let rc = laguerre_recurrence(1, &q(0, 1));
    assert_eq!((rc.a, rc.b, rc.c), (q(-2, 1), q(3, 1), q(-1, 1)));
    // Jacobi n=1, alpha=beta=0: identity holds as polynomials
    let rc = jacobi_recurrence(1, &q(0, 1), &q(0, 1)).unwrap();
    let p0 = jacobi(1, &q(0, 1), &q(0, 1));
    let lhs = &Poly::eta() * &p0;
    let rhs = &(&jacobi(2, &q(0, 1), &q(0, 1)).scale(&rc.a) + &p0.scale(&rc.b))
        + &jacobi(0, &q(0, 1), &q(0, 1)).scale(&rc.c);
    assert_eq!(lhs, rhs);
    // alpha = beta kills the B coefficient
    assert!(jacobi_recurrence(3, &q(5, 7), &q(5, 7)).unwrap().b.is_zero());
    // degenerate denominator
    assert!(jacobi_recurrence(1, &q(-1, 1), &q(-1, 1)).is_err());
}

#[test]
fn genfun_direct_equals_closed() {
    // Laguerre alpha=0 at eta=0: all L_n(0) = 1
    let pair = genfun_classical(&ClassicalParams::laguerre(0, q(0, 1)), &q(0, 1), 3).unwrap();
    assert_eq!(pair.direct, Series::from_rat_coeffs('t', &vec![q(1, 1); 4], 3));
    assert!(pair.first_mismatch().is_none());

    // Jacobi alpha=beta=0 at eta=1: P_n(1) = 1
    let pair =
        genfun_classical(&ClassicalParams::jacobi(0, q(0, 1), q(0, 1)), &q(1, 1), 3).unwrap();
    assert_eq!(pair.closed, Series::from_rat_coeffs('t', &vec![q(1, 1); 4], 3));
    assert!(pair.first_mismatch().is_none());

    // generic rational parameters
    for (a, b, eta) in [
        (q(1, 2), q(3, 2), q(1, 3)),
        (q(-5, 2), q(7, 3), q(-2, 5)),
        (q(2, 1), q(-9, 4), q(1, 7)),
    ] {
        let pair = genfun_classical(&ClassicalParams::jacobi(0, a.clone(), b), &eta, 8).unwrap();
        assert!(pair.first_mismatch().is_none());
        let pair = genfun_classical(&ClassicalParams::laguerre(0, a), &eta, 8).unwrap();
        assert!(pair.first_mismatch().is_none());
    }
}

#[test]
fn genfun_rising_and_falling_index() {
    for (a, eta) in [(q(1, 1), q(1, 2)), (q(-3, 2), q(2, 7)), (q(1, 3), q(-1, 4))] {
        let pair = laguerre_genfun_rising(&a, &eta, 6).unwrap();
        assert!(pair.first_mismatch().is_none(), "rising at alpha={a:?}");
        let pair = laguerre_genfun_falling(&a, &eta, 6).unwrap();
        assert!(pair.first_mismatch().is_none(), "falling at alpha={a:?}");
    }
}

#[test]
fn jacobi_to_laguerre_limit() {
    let betas = [q(100, 1), q(1000, 1), q(10000, 1)];
    // n=0: both sides are 1, exact at every beta
    let rep = limit_jacobi_to_laguerre(&q(1, 2), 0, &q(1, 1), &betas, true);
    assert!(rep.pass, "{}", rep.detail);
    // n=1, alpha=1/2, x=1, sign +: errors shrink ~10x per decade
    let rep = limit_jacobi_to_laguerre(&q(1, 2), 1, &q(1, 1), &betas, true);
    assert!(rep.pass, "{}", rep.detail);
    // n=2, sign -, alpha=0
    let rep = limit_jacobi_to_laguerre(&q(0, 1), 2, &q(3, 4), &betas, false);
    assert!(rep.pass, "{}", rep.detail);
}

#[test]
fn rodrigues_ledger_matches_expansion() {
    for (n, a) in [(0usize, q(1, 2)), (3, q(1, 2)), (5, q(-7, 3))] {
        assert_eq!(laguerre_rodrigues(n, &a), laguerre(n, &a), "laguerre n={n}");
    }
    for (n, a, b) in [
        (0usize, q(1, 2), q(3, 2)),
        (3, q(1, 3), q(-9, 4)),
        (4, q(-5, 2), q(2, 1)),
    ] {
        assert_eq!(jacobi_rodrigues(n, &a, &b), jacobi(n, &a, &b), "jacobi n={n}");
    }
}

#[test]
fn derivative_shift_elimination_is_exact() {
    use crate::xcore::Lambda;
    for fam in [Family::L1, Family::J2, Family::Hdpt] {
        let lam = match fam {
            Family::L1 | Family::L2 => Lambda::l(q(5, 2)),
            _ => Lambda::j(q(3, 2), q(7, 2)),
        };
        for n in 0..5 {
            let direct = classical_p(fam, n, &lam).derive();
            let shifted = classical_p_derivative_shifted(fam, n, &lam);
            assert_eq!(direct, shifted, "family {fam} n {n}");
        }
    }
}
