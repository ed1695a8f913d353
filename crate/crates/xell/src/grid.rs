//! Default parameter grids for the verification suites.
//!
//! Parameter picks follow g in {1, 1/2, 5/2} with the second parameter
//! adjusted to each family's ordering constraint (g > h > 0 for J1,
//! h > g > 0 for J2/hDPT). hDPT gets h deep enough that the requested
//! (ell, n) ranges stay below the bound-state cap.

use crate::exactnum::{rat, Rat};
use crate::xcore::{Family, ParamSet, ALL_FAMILIES};

/// Grid extents; `hdpt_depth` is the bound-state count n_B the hDPT picks
/// are built to provide.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub lmax: usize,
    pub nmax: usize,
    pub hdpt_nb: i64,
}

impl GridSpec {
    /// Default verify grid: ell <= 3, n <= 4.
    pub fn default_grid() -> Self {
        GridSpec {
            lmax: 3,
            nmax: 4,
            hdpt_nb: 7,
        }
    }

    /// Wider grid for the acceptance criteria: ell <= 4, n <= 6.
    pub fn acceptance() -> Self {
        GridSpec {
            lmax: 4,
            nmax: 6,
            hdpt_nb: 10,
        }
    }

    pub fn with_lmax(mut self, lmax: usize) -> Self {
        self.lmax = lmax;
        self.hdpt_nb = self.hdpt_nb.max((lmax + self.nmax) as i64);
        self
    }

    pub fn with_nmax(mut self, nmax: usize) -> Self {
        self.nmax = nmax;
        self.hdpt_nb = self.hdpt_nb.max((self.lmax + nmax) as i64);
        self
    }

    /// The three (g, h) picks for a family. For hDPT, h = g + 2 n_B + 1
    /// puts (h-g)/2 half-way, so n_B comes out exactly as requested.
    pub fn params_for(&self, family: Family) -> Vec<(Rat, Option<Rat>)> {
        let gs = [rat(1, 1), rat(1, 2), rat(5, 2)];
        match family {
            Family::L1 | Family::L2 => gs.iter().map(|g| (g.clone(), None)).collect(),
            Family::J1 => vec![
                (rat(1, 1), Some(rat(1, 2))),
                (rat(1, 2), Some(rat(1, 4))),
                (rat(5, 2), Some(rat(3, 2))),
            ],
            Family::J2 => vec![
                (rat(1, 1), Some(rat(2, 1))),
                (rat(1, 2), Some(rat(3, 2))),
                (rat(5, 2), Some(rat(7, 2))),
            ],
            Family::Hdpt => {
                let depth = Rat::from_integer((2 * self.hdpt_nb + 1).into());
                gs.iter()
                    .map(|g| (g.clone(), Some(g + &depth)))
                    .collect()
            }
        }
    }

    /// Every (family, parameter pick, ell) combination.
    pub fn param_sets(&self) -> Vec<ParamSet> {
        let mut out = vec![];
        for family in ALL_FAMILIES {
            for (g, h) in self.params_for(family) {
                for ell in 0..=self.lmax {
                    out.push(ParamSet::new(family, g.clone(), h.clone(), ell).unwrap());
                }
            }
        }
        out
    }

    /// The full (params, n) product grid.
    pub fn points(&self) -> Vec<(ParamSet, usize)> {
        self.param_sets()
            .into_iter()
            .flat_map(|p| (0..=self.nmax).map(move |n| (p.clone(), n)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_counts() {
        let spec = GridSpec::default_grid();
        // 5 families x 3 picks x (lmax+1) ells
        assert_eq!(spec.param_sets().len(), 5 * 3 * 4);
        assert_eq!(spec.points().len(), 5 * 3 * 4 * 5);
    }

    #[test]
    fn hdpt_picks_have_requested_depth() {
        let spec = GridSpec::acceptance();
        for (g, h) in spec.params_for(Family::Hdpt) {
            let p = ParamSet::new(Family::Hdpt, g, h, 0).unwrap();
            assert_eq!(p.n_b(), Some(10));
            assert!(p.in_paper_range());
        }
    }

    #[test]
    fn all_picks_in_paper_range() {
        for p in GridSpec::default_grid().param_sets() {
            assert!(p.in_paper_range(), "{}", p.describe());
        }
    }
}
