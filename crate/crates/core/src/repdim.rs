//! Closed-form dimensions of Killing-tensor spaces.
//!
//! On the round `n`-sphere the rank-`k` Killing tensors form the
//! `SL(n+1)` representation with two rows of `k` boxes. On `CP_n` the
//! dimension is an alternating sum of squares of two-row `SU(n+1)`
//! dimensions. All arithmetic is in arbitrary-precision integers, and every
//! division is checked to be exact.
//!
//! # Rank two on `CP_n`
//!
//! [`rank2_su_branching`] returns the `SU(n+1)` summands
//! `(2,0,…,0,2)`, `(0,1,0,…,0,1,0)`, `(1,0,…,0,1)` and the trivial
//! representation, with dimensions
//! `n(n+1)²(n+4)/4`, `(n-2)(n+1)²(n+2)/4`, `n(n+2)` and `1`.
//! The third summand is the adjoint representation, of dimension
//! `(n+1)² - 1 = n(n+2)`; with that value the four summands add up to
//! `n(n+1)²(n+2)/2` for every `n ≥ 2`. At `n = 2` the second family does
//! not exist and its polynomial vanishes, so the decomposition is
//! `27 + 0 + 8 + 1 = 36`. Both small cases are confirmed by the Casimir
//! eigenspace computation in `tensorlab`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::exactnum::{exact_div, serialize_decimal};

/// The pair `(n, k)`: sphere or projective dimension parameter and tensor rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TensorSpaceSpec {
    pub n: usize,
    pub k: usize,
}

impl TensorSpaceSpec {
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(Self { n, k })
    }

    /// Real dimension `2n + 2` of the model space for `CP_n`.
    pub fn real_dim(&self) -> usize {
        2 * self.n + 2
    }
}

/// One `(p, q)` term of the decomposition over `p + 2q = k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchTerm {
    pub p: usize,
    pub q: usize,
    #[serde(serialize_with = "serialize_decimal")]
    pub dim_factor: BigInt,
}

/// Factorials `0!..=max!`.
#[derive(Clone, Debug)]
pub struct Factorials(Vec<BigInt>);

impl Factorials {
    pub fn up_to(max: usize) -> Self {
        let mut v = Vec::with_capacity(max + 1);
        v.push(BigInt::one());
        for i in 1..=max {
            let next = &v[i - 1] * BigInt::from(i);
            v.push(next);
        }
        Self(v)
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    fn two_row(&self, n: usize, p: usize, q: usize) -> Result<BigInt, Error> {
        let num = self.get(n + q - 1) * self.get(n + p + q) * BigInt::from(p + 1);
        let den = self.get(q) * self.get(p + q + 1) * self.get(n - 1) * self.get(n);
        exact_div(&num, &den)
            .ok_or_else(|| Error::NonIntegral(format!("two-row dimension (n={n}, p={p}, q={q})")))
    }

    fn sum_of_squares(&self, n: usize, k: usize) -> Result<BigInt, Error> {
        let mut total = BigInt::zero();
        for q in 0..=k / 2 {
            let d = self.two_row(n, k - 2 * q, q)?;
            total += &d * &d;
        }
        Ok(total)
    }
}

fn check_n(n: usize) -> Result<(), Error> {
    if n == 0 {
        Err(Error::InvalidParameter("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Dimension of the rank-`k` Killing tensors on the round `n`-sphere:
/// `(n+k-1)! (n+k)! / (k! (k+1)! (n-1)! n!)`.
pub fn sphere_killing_dim(spec: TensorSpaceSpec) -> Result<BigInt, Error> {
    let TensorSpaceSpec { n, k } = spec;
    check_n(n)?;
    let f = Factorials::up_to(n + k + 1);
    let num = f.get(n + k - 1) * f.get(n + k);
    let den = f.get(k) * f.get(k + 1) * f.get(n - 1) * f.get(n);
    exact_div(&num, &den).ok_or_else(|| Error::NonIntegral(format!("sphere dimension {spec:?}")))
}

/// `(n+q-1)! (n+p+q)! (p+1) / (q! (p+q+1)! (n-1)! n!)`, the dimension of the
/// `SL(n+1)` representation whose Young diagram has rows `p+q` and `q`.
pub fn two_row_irrep_dim(n: usize, p: usize, q: usize) -> Result<BigInt, Error> {
    check_n(n)?;
    Factorials::up_to(n + p + q + 1).two_row(n, p, q)
}

/// Dimension of the rank-`k` Killing tensors on `CP_n`.
pub fn cpn_killing_dim(spec: TensorSpaceSpec) -> Result<BigInt, Error> {
    let TensorSpaceSpec { n, k } = spec;
    check_n(n)?;
    let f = Factorials::up_to(n + k + 1);
    cpn_dim_with(&f, n, k)
}

/// [`cpn_killing_dim`] for `k = 0..terms`, sharing one factorial table.
pub fn cpn_killing_dims(n: usize, terms: usize) -> Result<Vec<BigInt>, Error> {
    check_n(n)?;
    let f = Factorials::up_to(n + terms + 1);
    (0..terms).map(|k| cpn_dim_with(&f, n, k)).collect()
}

/// [`sphere_killing_dim`] for `k = 0..terms`.
pub fn sphere_killing_dims(n: usize, terms: usize) -> Result<Vec<BigInt>, Error> {
    (0..terms)
        .map(|k| sphere_killing_dim(TensorSpaceSpec { n, k }))
        .collect()
}

fn cpn_dim_with(f: &Factorials, n: usize, k: usize) -> Result<BigInt, Error> {
    let upper = f.sum_of_squares(n, k)?;
    if k == 0 {
        return Ok(upper);
    }
    Ok(upper - f.sum_of_squares(n, k - 1)?)
}

/// Closed polynomials in `n` for ranks 1 through 4 on `CP_n`.
pub fn cpn_killing_dim_closed(k: usize, n: usize) -> Result<BigInt, Error> {
    let m = BigInt::from(n);
    let m1 = &m + 1;
    let m2 = &m + 2;
    let sq = |x: &BigInt| x * x;
    let (num, den) = match k {
        1 => (&m * &m2, 1),
        2 => (&m * sq(&m1) * &m2, 2),
        3 => {
            let cubic = BigInt::from(5) * &m * &m * &m
                + BigInt::from(26) * &m * &m
                + BigInt::from(35) * &m
                + 24;
            (&m * sq(&m1) * cubic, 36)
        }
        4 => {
            let cubic = BigInt::from(7) * &m * &m * &m
                + BigInt::from(38) * &m * &m
                + BigInt::from(39) * &m
                + 36;
            (&m * sq(&m1) * sq(&m2) * cubic, 288)
        }
        _ => return Err(Error::NoClosedForm(k)),
    };
    exact_div(&num, &BigInt::from(den))
        .ok_or_else(|| Error::NonIntegral(format!("closed form k={k}, n={n}")))
}

/// All `(p, q)` with `p + 2q = k`, ordered by `q`, with their two-row dimensions.
pub fn branching_terms(spec: TensorSpaceSpec) -> Result<Vec<BranchTerm>, Error> {
    let TensorSpaceSpec { n, k } = spec;
    check_n(n)?;
    let f = Factorials::up_to(n + k + 1);
    (0..=k / 2)
        .map(|q| {
            let p = k - 2 * q;
            Ok(BranchTerm {
                p,
                q,
                dim_factor: f.two_row(n, p, q)?,
            })
        })
        .collect()
}

/// One `SU(n+1)` summand of the rank-two decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuSummand {
    /// Dynkin labels (`n` of them); `None` when the family does not exist for this `n`.
    pub labels: Option<Vec<u32>>,
    #[serde(serialize_with = "serialize_decimal")]
    pub dim: BigInt,
}

/// The four `SU(n+1)` summands of the rank-two Killing tensors on `CP_n`.
pub fn rank2_su_summands(n: usize) -> Result<Vec<SuSummand>, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "the rank-two branching needs n >= 2".into(),
        ));
    }
    let m = BigInt::from(n);
    let m1sq = (&m + 1) * (&m + 1);
    let div4 = |x: BigInt| {
        exact_div(&x, &BigInt::from(4))
            .ok_or_else(|| Error::NonIntegral(format!("rank-two summand at n={n}")))
    };
    let labels = |entries: &[(usize, u32)]| {
        let mut v = vec![0u32; n];
        for &(i, a) in entries {
            v[i] += a;
        }
        v
    };
    Ok(vec![
        SuSummand {
            labels: Some(labels(&[(0, 2), (n - 1, 2)])),
            dim: div4(&m * &m1sq * (&m + 4))?,
        },
        SuSummand {
            labels: (n >= 3).then(|| labels(&[(1, 1), (n - 2, 1)])),
            dim: div4((&m - 2) * &m1sq * (&m + 2))?,
        },
        SuSummand {
            labels: Some(labels(&[(0, 1), (n - 1, 1)])),
            dim: &m * (&m + 2),
        },
        SuSummand {
            labels: Some(vec![0; n]),
            dim: BigInt::one(),
        },
    ])
}

/// Dimensions of the four rank-two summands, in display order.
pub fn rank2_su_branching(n: usize) -> Result<Vec<BigInt>, Error> {
    Ok(rank2_su_summands(n)?.into_iter().map(|s| s.dim).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, k: usize) -> TensorSpaceSpec {
        TensorSpaceSpec::new(n, k).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Hook-content formula for the `GL(dim)` representation with the given
    /// partition; independent of the factorial ratios above.
    fn hook_content(dim: i64, shape: &[usize]) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape[r + 1..].iter().filter(|&&l| l > c).count();
                num *= big(dim + c as i64 - r as i64);
                den *= big((arm + leg + 1) as i64);
            }
        }
        assert_eq!(&num % &den, BigInt::zero());
        num / den
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_killing_dim(spec(3, 1)).unwrap(), big(6));
        assert_eq!(sphere_killing_dim(spec(2, 3)).unwrap(), big(10));
        for n in 1..10 {
            assert_eq!(sphere_killing_dim(spec(n, 0)).unwrap(), big(1));
        }
    }

    #[test]
    fn sphere_matches_hook_content() {
        for n in 1..12 {
            for k in 0..8 {
                assert_eq!(
                    sphere_killing_dim(spec(n, k)).unwrap(),
                    hook_content(n as i64 + 1, &[k, k]),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn two_row_examples() {
        for n in 1..=30 {
            let m = n as i64;
            assert_eq!(two_row_irrep_dim(n, 1, 0).unwrap(), big(m + 1));
            assert_eq!(two_row_irrep_dim(n, 0, 1).unwrap(), big(m * (m + 1) / 2));
        }
        assert_eq!(two_row_irrep_dim(4, 0, 0).unwrap(), big(1));
    }

    #[test]
    fn two_row_matches_hook_content() {
        for n in 1..8 {
            for p in 0..6 {
                for q in 0..5 {
                    let shape: Vec<usize> = [p + q, q].into_iter().filter(|&l| l > 0).collect();
                    assert_eq!(
                        two_row_irrep_dim(n, p, q).unwrap(),
                        hook_content(n as i64 + 1, &shape),
                        "n={n} p={p} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn cpn_examples() {
        assert_eq!(cpn_killing_dim(spec(1, 1)).unwrap(), big(3));
        assert_eq!(cpn_killing_dim(spec(2, 3)).unwrap(), big(119));
        assert_eq!(cpn_killing_dim(spec(7, 5)).unwrap(), big(6_246_072));
        assert_eq!(cpn_killing_dim(spec(5, 0)).unwrap(), big(1));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(cpn_killing_dim_closed(1, 5).unwrap(), big(35));
        assert_eq!(cpn_killing_dim_closed(2, 3).unwrap(), big(120));
        assert_eq!(cpn_killing_dim_closed(4, 2).unwrap(), big(322));
        assert_eq!(cpn_killing_dim_closed(3, 1).unwrap(), big(10));
        assert_eq!(cpn_killing_dim_closed(3, 2).unwrap(), big(119));
        assert!(matches!(
            cpn_killing_dim_closed(5, 2),
            Err(Error::NoClosedForm(5))
        ));
        assert!(matches!(
            cpn_killing_dim_closed(0, 2),
            Err(Error::NoClosedForm(0))
        ));
    }

    #[test]
    fn rank_one_is_n_times_n_plus_two() {
        for n in 1..=40 {
            let m = n as i64;
            assert_eq!(cpn_killing_dim(spec(n, 1)).unwrap(), big(m * (m + 2)));
        }
    }

    #[test]
    fn branching_examples() {
        let t0 = branching_terms(spec(3, 0)).unwrap();
        assert_eq!(
            t0,
            vec![BranchTerm {
                p: 0,
                q: 0,
                dim_factor: big(1)
            }]
        );

        let t2 = branching_terms(spec(3, 2)).unwrap();
        assert_eq!(t2.len(), 2);
        assert_eq!((t2[0].p, t2[0].q), (2, 0));
        assert_eq!(t2[0].dim_factor, two_row_irrep_dim(3, 2, 0).unwrap());
        assert_eq!((t2[1].p, t2[1].q, t2[1].dim_factor.clone()), (0, 1, big(6)));

        let pq: Vec<_> = branching_terms(spec(2, 5))
            .unwrap()
            .iter()
            .map(|t| (t.p, t.q))
            .collect();
        assert_eq!(pq, vec![(5, 0), (3, 1), (1, 2)]);
    }

    #[test]
    fn branching_squares_reproduce_cpn_dims() {
        for n in 1..8 {
            for k in 1..8 {
                let sq = |k| -> BigInt {
                    branching_terms(spec(n, k))
                        .unwrap()
                        .iter()
                        .map(|t| &t.dim_factor * &t.dim_factor)
                        .sum()
                };
                assert_eq!(sq(k) - sq(k - 1), cpn_killing_dim(spec(n, k)).unwrap());
            }
        }
    }

    #[test]
    fn rank_two_branching_small_cases() {
        assert_eq!(
            rank2_su_branching(2).unwrap(),
            vec![big(27), big(0), big(8), big(1)]
        );
        assert_eq!(
            rank2_su_branching(3).unwrap(),
            vec![big(84), big(20), big(15), big(1)]
        );
        let s = rank2_su_summands(3).unwrap();
        assert_eq!(s[1].labels, Some(vec![0, 2, 0]));
        assert_eq!(rank2_su_summands(2).unwrap()[1].labels, None);
        assert!(rank2_su_branching(1).is_err());
    }

    #[test]
    fn rank_two_branching_totals() {
        for n in 2..=40usize {
            let total: BigInt = rank2_su_branching(n).unwrap().into_iter().sum();
            let m = big(n as i64);
            let expected = &m * (&m + 1) * (&m + 1) * (&m + 2) / 2;
            assert_eq!(total, expected, "n={n}");
            assert_eq!(total, cpn_killing_dim(spec(n, 2)).unwrap());
        }
    }

    #[test]
    fn zero_n_is_rejected() {
        assert!(TensorSpaceSpec::new(0, 1).is_err());
        assert!(sphere_killing_dim(TensorSpaceSpec { n: 0, k: 1 }).is_err());
        assert!(two_row_irrep_dim(0, 1, 1).is_err());
    }
}
