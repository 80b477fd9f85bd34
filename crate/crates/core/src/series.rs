//! Generating functions of the Killing-tensor dimensions.
//!
//! `G_n(t) = Σ_k dim(sphere, n, k) t^k` and `H_n(t) = Σ_k dim(CP_n, k) t^k`
//! are rational with denominators `(1-t)^{2n-1}` and `(1-t)^{4n-1}`.
//! [`conjectured_h`] builds `H_n` from the Papoulis polynomials instead and
//! [`verify_poincare`] compares the two expansions term by term.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::exactnum::{
    from_big, one_minus_t_pow, rat, ratio, series_coeffs, Poly, RatFunc, Rational,
};
use crate::repdim::{cpn_killing_dims, sphere_killing_dims};

/// Legendre polynomial `L_m` from the Rodrigues formula.
pub fn legendre(m: usize) -> Poly {
    let mut p = Poly::from_i64(&[-1, 0, 1]).pow(m as u32);
    for _ in 0..m {
        p = p.derivative();
    }
    let mut norm = BigInt::from(1);
    for i in 1..=m {
        norm *= 2 * i;
    }
    p.scale(&(Rational::from_integer(1.into()) / from_big(norm)))
}

/// The Papoulis polynomial `P_{2k+1}(w)`:
/// `1/(2(k+1)^2) ∫_{-1}^{2w-1} (Σ_{i≤k} (2i+1) L_i(x))^2 dx`.
pub fn papoulis(k: usize) -> Poly {
    let mut s = Poly::zero();
    for i in 0..=k {
        s = &s + &legendre(i).scale(&rat(2 * i as i64 + 1));
    }
    let sq = &s * &s;
    let upper = Poly::linear(rat(-1), rat(2));
    let kk = (k + 1) as i64;
    sq.definite_integral(&rat(-1), &upper)
        .scale(&ratio(1, 2 * kk * kk))
}

/// `-1/(t(1-t)^{2n}) P_{2n-1}(t/(t-1))`, reduced.
pub fn conjectured_h(n: usize) -> Result<RatFunc, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let p = papoulis(n - 1);
    let d = 2 * n - 1;
    let t_minus_1 = Poly::from_i64(&[-1, 1]);
    // P(t/(t-1)) = N(t) / (t-1)^d
    let mut num = Poly::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        let term = &Poly::x().pow(j as u32) * &t_minus_1.pow((d - j) as u32);
        num = &num + &term.scale(c);
    }
    if !num.coeff(0).is_zero() {
        return Err(Error::IdentityMalformed(format!(
            "P_{}(t/(t-1)) has no factor t",
            2 * n - 1
        )));
    }
    let shifted = Poly::new(num.coeffs().iter().skip(1).map(|c| -c).collect());
    // (1-t)^{2n} (t-1)^d = (t-1)^{4n-1}
    RatFunc::new(shifted, t_minus_1.pow((4 * n - 1) as u32))
}

/// Multiplies the series `dims` by `(1-t)^e` and checks that everything past
/// `degree` vanishes.
fn numerator_from_dims(dims: &[BigInt], e: u32, degree: usize) -> Result<Poly, Error> {
    let weights = one_minus_t_pow(e);
    let w = weights.coeffs();
    let mut out = Vec::with_capacity(dims.len());
    for i in 0..dims.len() {
        let mut acc = BigInt::zero();
        for (j, wj) in w.iter().enumerate().take(i + 1) {
            acc += wj.to_integer() * &dims[i - j];
        }
        out.push(acc);
    }
    for (index, value) in out.iter().enumerate().skip(degree + 1) {
        if !value.is_zero() {
            return Err(Error::NotPolynomial {
                expected: degree,
                index,
                value: value.to_string(),
            });
        }
    }
    out.truncate(degree + 1);
    Ok(Poly::new(out.into_iter().map(from_big).collect()))
}

/// Numerator of `G_n` over `(1-t)^{2n-1}`; a row of the Catalan triangle.
pub fn g_numerator(n: usize) -> Result<Poly, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("g_numerator needs n >= 2".into()));
    }
    let degree = n - 2;
    let dims = sphere_killing_dims(n, degree + 1 + 2 * n)?;
    numerator_from_dims(&dims, (2 * n - 1) as u32, degree)
}

/// Numerator of `H_n` over `(1-t)^{4n-1}`.
pub fn h_numerator(n: usize) -> Result<Poly, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let degree = 2 * n - 2;
    let dims = cpn_killing_dims(n, degree + 1 + 2 * n)?;
    numerator_from_dims(&dims, (4 * n - 1) as u32, degree)
}

/// Outcome of comparing the expansion of [`conjectured_h`] with the
/// closed-form dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub n: usize,
    pub terms: usize,
    /// First index where the two sequences differ.
    pub first_mismatch: Option<usize>,
    /// Coefficients of the conjectured series (as decimal strings for large values).
    pub coefficients: Vec<String>,
}

impl PoincareReport {
    pub fn success(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn verify_poincare(n: usize, terms: usize) -> Result<PoincareReport, Error> {
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    let h = conjectured_h(n)?;
    let series = series_coeffs(&h, terms)?;
    let dims = cpn_killing_dims(n, terms)?;
    let first_mismatch = series
        .iter()
        .zip(&dims)
        .position(|(s, d)| *s != from_big(d.clone()));
    Ok(PoincareReport {
        n,
        terms,
        first_mismatch,
        coefficients: series.iter().map(|c| c.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(p: &Poly) -> Vec<i64> {
        p.integer_coeffs()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0), Poly::one());
        assert_eq!(legendre(1), Poly::x());
        assert_eq!(
            legendre(2),
            Poly::new(vec![ratio(-1, 2), rat(0), ratio(3, 2)])
        );
        assert_eq!(
            legendre(3),
            Poly::new(vec![rat(0), ratio(-3, 2), rat(0), ratio(5, 2)])
        );
    }

    #[test]
    fn legendre_is_orthogonal() {
        for a in 0..6 {
            for b in 0..6 {
                let prod = &legendre(a) * &legendre(b);
                let integral = prod.definite_integral(&rat(-1), &Poly::constant(rat(1)));
                let expected = if a == b {
                    ratio(2, 2 * a as i64 + 1)
                } else {
                    rat(0)
                };
                assert_eq!(integral.coeff(0), expected, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn papoulis_examples() {
        assert_eq!(ints(&papoulis(0)), vec![0, 1]);
        assert_eq!(ints(&papoulis(1)), vec![0, 1, -3, 3]);
        assert_eq!(ints(&papoulis(2)), vec![0, 1, -8, 28, -40, 20]);
    }

    #[test]
    fn papoulis_endpoints() {
        for k in 0..=10 {
            let p = papoulis(k);
            assert_eq!(p.degree(), Some(2 * k + 1));
            assert_eq!(p.eval(&rat(0)), rat(0));
            assert_eq!(p.eval(&rat(1)), rat(1));
        }
    }

    #[test]
    fn conjectured_examples() {
        let h2 = conjectured_h(2).unwrap();
        assert_eq!(h2.over_one_minus_t(), Some((Poly::from_i64(&[1, 1, 1]), 7)));
        let (num3, e3) = conjectured_h(3).unwrap().over_one_minus_t().unwrap();
        assert_eq!((ints(&num3), e3), (vec![1, 4, 10, 4, 1], 11));
        let (num4, e4) = conjectured_h(4).unwrap().over_one_minus_t().unwrap();
        assert_eq!((ints(&num4), e4), (vec![1, 9, 45, 65, 45, 9, 1], 15));
    }

    #[test]
    fn conjectured_denominator_exponent() {
        for n in 1..=6 {
            let (_, e) = conjectured_h(n).unwrap().over_one_minus_t().unwrap();
            assert_eq!(e as usize, 4 * n - 1);
        }
    }

    #[test]
    fn sphere_numerators() {
        let rows: [&[i64]; 6] = [
            &[1],
            &[1, 1],
            &[1, 3, 1],
            &[1, 6, 6, 1],
            &[1, 10, 20, 10, 1],
            &[1, 15, 50, 50, 15, 1],
        ];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(ints(&g_numerator(i + 2).unwrap()), row.to_vec());
        }
        assert!(g_numerator(1).is_err());
    }

    /// Narayana numbers `C(m,j) C(m,j+1) / m`, computed directly.
    fn narayana_row(m: i64) -> Vec<i64> {
        let binom = |a: i64, b: i64| -> i64 { (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1)) };
        (0..m).map(|j| binom(m, j) * binom(m, j + 1) / m).collect()
    }

    #[test]
    fn sphere_numerators_are_narayana_rows() {
        for n in 2..=12 {
            assert_eq!(ints(&g_numerator(n).unwrap()), narayana_row(n as i64 - 1));
        }
    }

    #[test]
    fn cp_numerators() {
        let rows: [&[i64]; 6] = [
            &[1],
            &[1, 1, 1],
            &[1, 4, 10, 4, 1],
            &[1, 9, 45, 65, 45, 9, 1],
            &[1, 16, 136, 416, 626, 416, 136, 16, 1],
            &[1, 25, 325, 1700, 4550, 6202, 4550, 1700, 325, 25, 1],
        ];
        for (i, row) in rows.iter().enumerate() {
            let h = h_numerator(i + 1).unwrap();
            assert_eq!(ints(&h), row.to_vec(), "n={}", i + 1);
            assert!(h.is_palindromic());
        }
    }

    #[test]
    fn cp1_series_is_triangular() {
        // 1, 3, 6, 10, ... so H_1 = 1/(1-t)^3
        let r = verify_poincare(1, 5).unwrap();
        assert!(r.success());
        assert_eq!(r.coefficients, ["1", "3", "6", "10", "15"]);
        assert_eq!(h_numerator(1).unwrap(), Poly::one());
    }

    #[test]
    fn poincare_examples() {
        let r = verify_poincare(2, 6).unwrap();
        assert!(r.success());
        assert_eq!(r.coefficients, ["1", "8", "36", "119", "322", "756"]);
        let r = verify_poincare(4, 3).unwrap();
        assert!(r.success());
        assert_eq!(r.coefficients, ["1", "24", "300"]);
    }

    #[test]
    fn numerator_check_reports_tail() {
        let dims: Vec<BigInt> = [1, 2, 3, 5].iter().map(|&v| BigInt::from(v)).collect();
        assert!(matches!(
            numerator_from_dims(&dims, 1, 1),
            Err(Error::NotPolynomial {
                expected: 1,
                index: 2,
                ..
            })
        ));
    }

    #[test]
    fn verify_requires_terms() {
        assert!(verify_poincare(2, 0).is_err());
        assert!(conjectured_h(0).is_err());
    }

    proptest! {
        #[test]
        fn conjectured_series_matches_dims(n in 1usize..5, terms in 1usize..60) {
            prop_assert!(verify_poincare(n, terms).unwrap().success());
        }
    }
}
