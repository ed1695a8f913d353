//! Per-family constant table: the d, c, E and shift data every construction
//! and operator draws from. Encoded once here, never recomputed ad hoc.

use num::One;

use crate::exactnum::{rat, Poly, Rat};

use super::{Family, Lambda, ParamSet};

/// Family constants bound to a concrete (lambda, ell). Entries that depend
/// on a shifted parameter set take it explicitly (`*_at` variants).
#[derive(Clone, Debug)]
pub struct FamilyTable {
    pub family: Family,
    pub lambda: Lambda,
    pub ell: usize,
}

impl FamilyTable {
    pub fn new(family: Family, lambda: Lambda, ell: usize) -> Self {
        FamilyTable {
            family,
            lambda,
            ell,
        }
    }

    pub fn from_params(p: &ParamSet) -> Self {
        FamilyTable::new(p.family, p.lambda.clone(), p.ell)
    }

    pub fn d0_at(&self, n: i64, lam: &Lambda) -> Rat {
        let nf = Rat::from_integer(n.into());
        match self.family {
            Family::L1 => Rat::one(),
            Family::L2 | Family::J2 | Family::Hdpt => nf + &lam.g + rat(1, 2),
            Family::J1 => nf + lam.h() + rat(1, 2),
        }
    }

    pub fn d0(&self, n: i64) -> Rat {
        self.d0_at(n, &self.lambda)
    }

    pub fn d1_at(&self, lam: &Lambda) -> Rat {
        match self.family {
            Family::L1 => Rat::one(),
            Family::L2 | Family::J2 | Family::Hdpt => &lam.g + rat(1, 2),
            Family::J1 => lam.h() + rat(1, 2),
        }
    }

    pub fn d1(&self) -> Rat {
        self.d1_at(&self.lambda)
    }

    pub fn d2(&self) -> Poly {
        match self.family {
            Family::L1 => Poly::one(),
            Family::L2 => Poly::from_i64(&[0, -1]),
            Family::J1 => Poly::from_i64(&[-1, -1]),
            Family::J2 | Family::Hdpt => Poly::from_i64(&[1, -1]),
        }
    }

    pub fn d3_at(&self, lam: &Lambda) -> Rat {
        let ellf = Rat::from_integer((self.ell as i64).into());
        match self.family {
            Family::L1 | Family::J1 => &lam.g + &ellf - rat(1, 2),
            Family::L2 => Rat::one(),
            Family::J2 => lam.h() + &ellf - rat(1, 2),
            Family::Hdpt => lam.h() - &ellf + rat(1, 2),
        }
    }

    pub fn d3(&self) -> Rat {
        self.d3_at(&self.lambda)
    }

    pub fn c1_at(&self, lam: &Lambda) -> Poly {
        match self.family {
            Family::L1 | Family::L2 => Poly::new(vec![&lam.g + rat(1, 2), -Rat::one()]),
            Family::J1 | Family::J2 => Poly::new(vec![
                lam.h() - &lam.g,
                -(&lam.g + lam.h() + Rat::one()),
            ]),
            Family::Hdpt => Poly::new(vec![
                &lam.g + lam.h(),
                &lam.g - lam.h() + Rat::one(),
            ]),
        }
    }

    pub fn c1(&self) -> Poly {
        self.c1_at(&self.lambda)
    }

    pub fn c2(&self) -> Poly {
        match self.family {
            Family::L1 | Family::L2 => Poly::eta(),
            Family::J1 | Family::J2 => Poly::from_i64(&[1, 0, -1]),
            Family::Hdpt => Poly::from_i64(&[-1, 0, 1]),
        }
    }

    /// c2/d2, polynomial for every family: eta (L1), -1 (L2), eta-1 (J1),
    /// 1+eta (J2), -(1+eta) (hDPT).
    pub fn c2_over_d2(&self) -> Poly {
        match self.family {
            Family::L1 => Poly::eta(),
            Family::L2 => Poly::from_i64(&[-1]),
            Family::J1 => Poly::from_i64(&[-1, 1]),
            Family::J2 => Poly::from_i64(&[1, 1]),
            Family::Hdpt => Poly::from_i64(&[-1, -1]),
        }
    }

    pub fn c1_tilde_at(&self, lam: &Lambda) -> Poly {
        let ellf = Rat::from_integer((self.ell as i64).into());
        match self.family {
            Family::L1 => Poly::new(vec![&lam.g + &ellf - rat(1, 2), Rat::one()]),
            Family::L2 => Poly::new(vec![-(&lam.g + &ellf - rat(1, 2)), -Rat::one()]),
            Family::J1 => Poly::new(vec![
                -(&lam.g + lam.h() + &ellf + &ellf - Rat::one()),
                lam.h() - &lam.g,
            ]),
            Family::J2 => Poly::new(vec![
                &lam.g + lam.h() + &ellf + &ellf - Rat::one(),
                &lam.g - lam.h(),
            ]),
            Family::Hdpt => Poly::new(vec![
                lam.h() - &lam.g - &ellf - &ellf + Rat::one(),
                -(&lam.g + lam.h()),
            ]),
        }
    }

    pub fn c1_tilde(&self) -> Poly {
        self.c1_tilde_at(&self.lambda)
    }

    pub fn cf(&self) -> Rat {
        match self.family {
            Family::L1 | Family::L2 => rat(2, 1),
            Family::J1 | Family::J2 => rat(-4, 1),
            Family::Hdpt => rat(4, 1),
        }
    }

    pub fn f_n_at(&self, n: i64, lam: &Lambda) -> Rat {
        let nf = Rat::from_integer(n.into());
        match self.family {
            Family::L1 | Family::L2 => rat(-2, 1),
            Family::J1 | Family::J2 => rat(-2, 1) * (nf + &lam.g + lam.h()),
            Family::Hdpt => rat(2, 1) * (nf + &lam.g - lam.h()),
        }
    }

    pub fn b_prev(&self, n: i64) -> Rat {
        rat(-2, 1) * Rat::from_integer(n.into())
    }

    pub fn e_n_at(&self, n: i64, lam: &Lambda) -> Rat {
        let nf = Rat::from_integer(n.into());
        let four = rat(4, 1);
        match self.family {
            Family::L1 | Family::L2 => four * nf,
            Family::J1 | Family::J2 => four * &nf * (&nf + &lam.g + lam.h()),
            Family::Hdpt => four * &nf * (lam.h() - &lam.g - &nf),
        }
    }

    pub fn e_n(&self, n: i64) -> Rat {
        self.e_n_at(n, &self.lambda)
    }

    pub fn e_tilde_at(&self, lam: &Lambda) -> Rat {
        let ellf = Rat::from_integer((self.ell as i64).into());
        let four = rat(4, 1);
        match self.family {
            Family::L1 => -four * ellf,
            Family::L2 => four * ellf,
            Family::J1 => four * &ellf * (&ellf + &lam.g - lam.h() - Rat::one()),
            Family::J2 => four * &ellf * (&ellf - &lam.g + lam.h() - Rat::one()),
            Family::Hdpt => four * &ellf * (&lam.g + lam.h() + Rat::one() - &ellf),
        }
    }

    pub fn e_tilde(&self) -> Rat {
        self.e_tilde_at(&self.lambda)
    }

    /// Gram-Schmidt seed p_k: eta^k (L), (1+eta)^k (J1), (1-eta)^k (J2),
    /// (eta-1)^k (hDPT).
    pub fn gs_seed(&self, k: usize) -> Poly {
        match self.family {
            Family::L1 | Family::L2 => Poly::monomial(Rat::one(), k),
            Family::J1 => Poly::from_i64(&[1, 1]).pow(k),
            Family::J2 => Poly::from_i64(&[1, -1]).pow(k),
            Family::Hdpt => Poly::from_i64(&[-1, 1]).pow(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn tbl(family: Family, g: (i64, i64), h: Option<(i64, i64)>, ell: usize) -> FamilyTable {
        let lam = match h {
            Some((n, d)) => Lambda::j(rat(g.0, g.1), rat(n, d)),
            None => Lambda::l(rat(g.0, g.1)),
        };
        FamilyTable::new(family, lam, ell)
    }

    #[test]
    fn l1_row() {
        let t = tbl(Family::L1, (1, 1), None, 1);
        assert_eq!(t.d0(3), rat(1, 1));
        assert_eq!(t.d1(), rat(1, 1));
        assert_eq!(t.d2(), Poly::one());
        assert_eq!(t.cf(), rat(2, 1));
        assert_eq!(t.f_n_at(5, &t.lambda.clone()), rat(-2, 1));
        assert_eq!(t.b_prev(3), rat(-6, 1));
        assert_eq!(t.e_n(3), rat(12, 1));
        assert_eq!(t.e_tilde(), rat(-4, 1));
    }

    #[test]
    fn j2_row_signs() {
        // d2 = +(1 - eta), d1 = g + 1/2
        let t = tbl(Family::J2, (1, 1), Some((3, 1)), 1);
        assert_eq!(t.d2(), Poly::from_i64(&[1, -1]));
        assert_eq!(t.d1(), rat(3, 2));
        assert_eq!(t.d3(), rat(7, 2)); // h + ell - 1/2
        assert_eq!(t.e_tilde(), rat(4, 1) * rat(1, 1) * (rat(1, 1) - rat(1, 1) + rat(3, 1) - rat(1, 1)));
    }

    #[test]
    fn hdpt_row() {
        let t = tbl(Family::Hdpt, (1, 1), Some((6, 1)), 1);
        assert_eq!(t.c2(), Poly::from_i64(&[-1, 0, 1]));
        assert_eq!(t.e_n(2), rat(4, 1) * rat(2, 1) * rat(3, 1)); // 4n(h-g-n)
        assert_eq!(t.cf(), rat(4, 1));
        assert_eq!(t.f_n_at(1, &t.lambda.clone()), rat(-8, 1)); // 2(n+g-h)
        assert_eq!(t.d3(), rat(11, 2)); // h - ell + 1/2
    }

    #[test]
    fn eigenvalue_factorisation_holds() {
        // E_n = f_n * b_{n-1} for every family at several n
        for fam in super::super::ALL_FAMILIES {
            let t = match fam {
                Family::L1 | Family::L2 => tbl(fam, (5, 2), None, 2),
                _ => tbl(fam, (3, 2), Some((7, 2)), 2),
            };
            for n in 0..6 {
                let lhs = t.e_n(n);
                let rhs = t.f_n_at(n, &t.lambda) * t.b_prev(n);
                assert_eq!(lhs, rhs, "family {fam} n {n}");
            }
        }
    }

    #[test]
    fn d1_shift_matches_d2_slope() {
        // d1(lambda) - d1(lambda+delta) = d/d eta d2(eta) for every family
        for fam in super::super::ALL_FAMILIES {
            let t = match fam {
                Family::L1 | Family::L2 => tbl(fam, (5, 2), None, 3),
                _ => tbl(fam, (3, 2), Some((9, 2)), 3),
            };
            let shifted = fam.shift(&t.lambda, 1);
            let lhs = t.d1() - t.d1_at(&shifted);
            let slope = t.d2().derive();
            assert_eq!(Poly::constant(lhs), slope, "family {fam}");
        }
    }

    #[test]
    fn c2_over_d2_is_exact() {
        for fam in super::super::ALL_FAMILIES {
            let t = match fam {
                Family::L1 | Family::L2 => tbl(fam, (1, 1), None, 1),
                _ => tbl(fam, (1, 1), Some((3, 1)), 1),
            };
            assert_eq!(&t.c2_over_d2() * &t.d2(), t.c2(), "family {fam}");
        }
    }
}
