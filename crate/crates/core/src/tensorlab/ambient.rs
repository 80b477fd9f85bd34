use serde::Serialize;

use crate::error::Error;
use crate::exactnum::{rat, ExactMatrix};

/// Environment variable overriding [`OracleBudget::DEFAULT_MAX_COORDS`].
pub const BUDGET_ENV: &str = "KILLTENS_ORACLE_BUDGET";

/// Cap on the number of ambient coordinates `d^{2k}` the oracle will touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_coords: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_coords: Self::DEFAULT_MAX_COORDS,
        }
    }
}

impl OracleBudget {
    pub const DEFAULT_MAX_COORDS: u128 = 70_000;

    pub fn new(max_coords: u128) -> Self {
        Self { max_coords }
    }

    /// The default, or the value of `KILLTENS_ORACLE_BUDGET` if it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Self::new)
            .unwrap_or_default()
    }

    pub fn check(&self, d: usize, slots: usize) -> Result<(), Error> {
        let required = (d as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
        if required > self.max_coords {
            return Err(Error::OracleTooLarge {
                required,
                cap: self.max_coords,
            });
        }
        Ok(())
    }
}

/// `R^{2n+2}` with the identity metric and the standard complex structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientModel {
    pub n: usize,
    pub d: usize,
    pub g: ExactMatrix,
    /// `J_α^β`, acting on column vectors with `J e_{2i} = e_{2i+1}`.
    pub jmix: ExactMatrix,
    /// `J_{αβ} = J_α^γ g_{βγ}`.
    pub jskew: ExactMatrix,
}

impl AmbientModel {
    /// Integer entry of `J_{αβ}`; also the entries of `J^{αβ}` since `g` is the identity.
    pub(crate) fn jskew_entry(&self, a: usize, b: usize) -> i64 {
        if a / 2 != b / 2 || a == b {
            0
        } else if a % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Columns of `J` as a linear map: `J e_b = Σ_a J[a][b] e_a`.
    pub(crate) fn jmix_columns(&self) -> Vec<Vec<(usize, i64)>> {
        (0..self.d)
            .map(|b| {
                if b % 2 == 0 {
                    vec![(b + 1, 1)]
                } else {
                    vec![(b - 1, -1)]
                }
            })
            .collect()
    }
}

pub fn build_ambient(n: usize) -> AmbientModel {
    let d = 2 * n + 2;
    let mut trip = Vec::new();
    for i in 0..=n {
        trip.push((2 * i + 1, 2 * i, rat(1)));
        trip.push((2 * i, 2 * i + 1, rat(-1)));
    }
    let jmix = ExactMatrix::from_triplets(d, d, trip).expect("indices in range");
    let g = ExactMatrix::identity(d);
    let jskew = jmix.mul(&g).expect("square");
    AmbientModel {
        n,
        d,
        g,
        jmix,
        jskew,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use num_traits::Zero;

    fn neg(m: &ExactMatrix) -> ExactMatrix {
        let trip: Vec<_> = m.entries().map(|(r, c, v)| (r, c, -v.clone())).collect();
        ExactMatrix::from_triplets(m.rows(), m.cols(), trip).unwrap()
    }

    #[test]
    fn complex_structure_relations() {
        for n in 1..5 {
            let m = build_ambient(n);
            assert_eq!(m.d, 2 * n + 2);
            let sq = m.jmix.mul(&m.jmix).unwrap();
            assert_eq!(sq, neg(&ExactMatrix::identity(m.d)));
            assert_eq!(
                m.jmix.transpose().mul(&m.jmix).unwrap(),
                ExactMatrix::identity(m.d)
            );
            assert_eq!(m.jskew.transpose(), neg(&m.jskew));
            let full: Rational = m.jskew.entries().map(|(_, _, v)| v * v).sum();
            assert_eq!(full, rat(m.d as i64));
            for a in 0..m.d {
                for b in 0..m.d {
                    assert_eq!(m.jskew.get(a, b), rat(m.jskew_entry(a, b)));
                }
            }
        }
    }

    #[test]
    fn jmix_sends_even_to_odd() {
        let m = build_ambient(2);
        assert_eq!(m.jmix.get(1, 0), rat(1));
        assert_eq!(m.jmix.get(0, 1), rat(-1));
        assert!(m.jmix.get(2, 0).is_zero());
        let cols = m.jmix_columns();
        for (b, col) in cols.iter().enumerate() {
            for (a, v) in col {
                assert_eq!(m.jmix.get(*a, b), rat(*v));
            }
        }
    }

    #[test]
    fn pfaffian_is_unit() {
        let m = build_ambient(2);
        // block diagonal, so the Pfaffian is the product of the (2i, 2i+1) entries
        let pf: Rational = (0..3).map(|i| m.jskew.get(2 * i, 2 * i + 1)).product();
        assert_eq!(pf.clone() * pf, rat(1));
    }

    #[test]
    fn budget_check() {
        let b = OracleBudget::default();
        assert!(b.check(6, 6).is_ok());
        assert!(matches!(
            b.check(6, 8),
            Err(Error::OracleTooLarge {
                required: 1_679_616,
                cap: 70_000
            })
        ));
    }
}
