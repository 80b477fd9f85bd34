use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{rat, Rational};
use crate::error::Error;

/// Reduced ratio of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: Poly::one(),
            });
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = Rational::one() / lead;
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    /// Rewrites `self` as `N(t) / (1-t)^e` when the denominator is a power
    /// of `(1-t)`; returns `(N, e)`.
    pub fn over_one_minus_t(&self) -> Option<(Poly, u32)> {
        let e = self.den.degree()? as u32;
        // the monic denominator would be (t-1)^e
        if self.den != Poly::from_i64(&[-1, 1]).pow(e) {
            return None;
        }
        let sign = if e % 2 == 0 { rat(1) } else { rat(-1) };
        Some((self.num.scale(&sign), e))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.over_one_minus_t() {
            Some((n, 0)) => write!(f, "{}", n.display_in("t")),
            Some((n, e)) => write!(f, "({})/(1-t)^{}", n.display_in("t"), e),
            None => write!(
                f,
                "({})/({})",
                self.num.display_in("t"),
                self.den.display_in("t")
            ),
        }
    }
}

/// `(1 - t)^e`.
pub fn one_minus_t_pow(e: u32) -> Poly {
    Poly::from_i64(&[1, -1]).pow(e)
}

/// First `terms` Taylor coefficients of `f` at the origin, by exact long division.
pub fn series_coeffs(f: &RatFunc, terms: usize) -> Result<Vec<Rational>, Error> {
    let b0 = f.den.coeff(0);
    if b0.is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let den = f.den.coeffs();
    let mut out: Vec<Rational> = Vec::with_capacity(terms);
    for i in 0..terms {
        let mut acc = f.num.coeff(i);
        for (j, bj) in den.iter().enumerate().skip(1).take(i) {
            if !bj.is_zero() {
                acc -= bj * &out[i - j];
            }
        }
        out.push(acc / &b0);
    }
    Ok(out)
}

/// Product of two truncated power series (Cauchy convolution).
pub fn convolve(a: &[Rational], b: &[Rational], terms: usize) -> Vec<Rational> {
    (0..terms)
        .map(|i| {
            (0..=i)
                .filter(|&j| j < a.len() && i - j < b.len())
                .fold(Rational::zero(), |acc, j| acc + &a[j] * &b[i - j])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let f = RatFunc::new(Poly::one(), one_minus_t_pow(1)).unwrap();
        assert_eq!(series_coeffs(&f, 4).unwrap(), vec![rat(1); 4]);
    }

    #[test]
    fn cp2_series_head() {
        let f = RatFunc::new(Poly::from_i64(&[1, 1, 1]), one_minus_t_pow(7)).unwrap();
        let c = series_coeffs(&f, 4).unwrap();
        assert_eq!(c, vec![rat(1), rat(8), rat(36), rat(119)]);
    }

    #[test]
    fn s3_series_linear_term() {
        let f = RatFunc::new(Poly::from_i64(&[1, 1]), one_minus_t_pow(5)).unwrap();
        assert_eq!(series_coeffs(&f, 2).unwrap()[1], rat(6));
    }

    #[test]
    fn pole_at_origin_is_rejected() {
        let f = RatFunc::new(Poly::one(), Poly::x()).unwrap();
        assert!(matches!(series_coeffs(&f, 3), Err(Error::PoleAtOrigin)));
    }

    #[test]
    fn reduction_and_normal_form() {
        // (1 - t^2) / (1 - t)^3 = (1 + t) / (1 - t)^2
        let f = RatFunc::new(Poly::from_i64(&[1, 0, -1]), one_minus_t_pow(3)).unwrap();
        assert_eq!(f.over_one_minus_t(), Some((Poly::from_i64(&[1, 1]), 2)));
        assert_eq!(f.to_string(), "(1+t)/(1-t)^2");
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    proptest! {
        #[test]
        fn series_of_product_is_convolution(
            na in prop::collection::vec(-4i64..5, 1..4),
            da in 1u32..4,
            nb in prop::collection::vec(-4i64..5, 1..4),
            db in prop::collection::vec(-3i64..4, 1..3),
        ) {
            let f = RatFunc::new(Poly::from_i64(&na), one_minus_t_pow(da)).unwrap();
            let mut den_b = vec![1i64];
            den_b.extend(db);
            let g = RatFunc::new(Poly::from_i64(&nb), Poly::from_i64(&den_b)).unwrap();
            let terms = 8;
            let lhs = series_coeffs(&f.mul(&g), terms).unwrap();
            let rhs = convolve(
                &series_coeffs(&f, terms).unwrap(),
                &series_coeffs(&g, terms).unwrap(),
                terms,
            );
            prop_assert_eq!(lhs, rhs);
        }
    }
}
