//! Splitting the solution space into `SU(n+1)` isotypic pieces by the
//! eigenvalues of the quadratic Casimir.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::ambient::OracleBudget;
use super::constraints::act_on_slots;
use super::index::{add_big, finish_big, Indexer};
use super::oracle::{killing_field_space, oracle_cpn_space_with};
use crate::error::Error;
use crate::exactnum::{int_to_rational, rank, rat, Echelon, ExactMatrix, IntVec, Rational};
use crate::repdim::rank2_su_summands;

/// Real `d × d` form of a complex `N × N` matrix given by its nonzero
/// entries `(row, col, re, im)`, using `z_j = x_{2j} + i x_{2j+1}`.
fn realify(d: usize, entries: &[(usize, usize, i64, i64)]) -> Vec<Vec<(usize, i64)>> {
    let mut cols = vec![Vec::new(); d];
    for &(a, b, x, y) in entries {
        if x != 0 {
            cols[2 * b].push((2 * a, x));
            cols[2 * b + 1].push((2 * a + 1, x));
        }
        if y != 0 {
            cols[2 * b].push((2 * a + 1, y));
            cols[2 * b + 1].push((2 * a, -y));
        }
    }
    cols
}

/// Basis of `u(N)` orthogonal for the trace form, with weights making
/// `Σ w X²` twice the Casimir element.
fn unitary_basis(big_n: usize) -> Vec<(Vec<Vec<(usize, i64)>>, i64)> {
    let d = 2 * big_n;
    let mut out = Vec::new();
    for a in 0..big_n {
        for b in a + 1..big_n {
            out.push((realify(d, &[(a, b, 1, 0), (b, a, -1, 0)]), 1));
            out.push((realify(d, &[(a, b, 0, 1), (b, a, 0, 1)]), 1));
        }
        out.push((realify(d, &[(a, a, 0, 1)]), 2));
    }
    out
}

fn casimir_apply(ix: &Indexer, basis: &[(Vec<Vec<(usize, i64)>>, i64)], v: &IntVec) -> IntVec {
    let mut acc = std::collections::HashMap::new();
    for (x, w) in basis {
        let once = act_on_slots(ix, x, v);
        for (i, c) in act_on_slots(ix, x, &once) {
            add_big(&mut acc, i, -c * BigInt::from(*w));
        }
    }
    finish_big(acc)
}

/// `⟨λ, λ + 2ρ⟩` for `SU(N)` with Dynkin labels `labels` (length `N - 1`).
pub fn casimir_value(labels: &[u32]) -> Rational {
    let big_n = labels.len() as i64 + 1;
    let shifted: Vec<i64> = labels.iter().map(|&l| l as i64 + 2).collect();
    let mut s = Rational::zero();
    for (i, &li) in labels.iter().enumerate() {
        for (j, &mj) in shifted.iter().enumerate() {
            let (lo, hi) = (i.min(j) as i64 + 1, i.max(j) as i64 + 1);
            s += Rational::new(BigInt::from(lo * (big_n - hi)), BigInt::from(big_n))
                * rat(li as i64 * mj);
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirComponent {
    pub labels: Vec<u32>,
    /// Eigenvalue in units where the adjoint representation has `2N`.
    pub eigenvalue: String,
    /// Dimension of the eigenspace inside the solution space.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirReport {
    pub n: usize,
    pub k: usize,
    pub space_dim: usize,
    pub components: Vec<CasimirComponent>,
    /// Sum of the multiplicities.
    pub accounted: usize,
}

/// Multiplicity of each predicted Casimir eigenvalue on the rank-`k`
/// solution space for `CP_n`.
pub fn casimir_decomposition(
    n: usize,
    k: usize,
    candidates: &[Vec<u32>],
    budget: &OracleBudget,
) -> Result<CasimirReport, Error> {
    let big_n = n + 1;
    if let Some(bad) = candidates.iter().find(|l| l.len() != n) {
        return Err(Error::InvalidParameter(format!(
            "expected {n} Dynkin labels, got {bad:?}"
        )));
    }
    let ops = unitary_basis(big_n);

    // normalization: the Killing fields form the adjoint representation
    let adj = killing_field_space(n)?;
    let ix1 = Indexer::new(adj.d, 2);
    let v = &adj.vectors[0];
    let cv = casimir_apply(&ix1, &ops, v);
    let scale = Rational::new(cv[0].1.clone(), v[0].1.clone());
    let check: Vec<(usize, Rational)> = int_to_rational(v)
        .into_iter()
        .map(|(i, a)| (i, a * &scale))
        .collect();
    if check != int_to_rational(&cv) {
        return Err(Error::IdentityMalformed(
            "Casimir is not scalar on the adjoint".into(),
        ));
    }
    let unit = scale / rat(2 * big_n as i64);

    let space = oracle_cpn_space_with(n, k, budget)?;
    let ix = Indexer::new(space.d, 2 * k);
    let mut ech = Echelon::new(usize::MAX);
    for v in &space.vectors {
        ech.insert(v.clone());
    }
    let basis: Vec<IntVec> = ech.rows().to_vec();
    let dim = basis.len();
    let mut columns = Vec::with_capacity(dim);
    for b in &basis {
        let cb = casimir_apply(&ix, &ops, b);
        let coords = ech
            .coordinates(&int_to_rational(&cb))
            .ok_or_else(|| Error::IdentityMalformed("Casimir leaves the solution space".into()))?;
        columns.push(
            coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        );
    }
    let m = ExactMatrix::from_columns(dim, columns);

    let mut components = Vec::new();
    for labels in candidates {
        let lambda = casimir_value(labels) * &unit;
        let shifted: Vec<(usize, usize, Rational)> = m
            .entries()
            .map(|(r, c, x)| (r, c, x.clone()))
            .chain((0..dim).map(|i| (i, i, -lambda.clone())))
            .collect();
        let shifted = ExactMatrix::from_triplets(dim, dim, shifted)?;
        components.push(CasimirComponent {
            labels: labels.clone(),
            eigenvalue: casimir_value(labels).to_string(),
            multiplicity: dim - rank(&shifted),
        });
    }
    let accounted = components.iter().map(|c| c.multiplicity).sum();
    Ok(CasimirReport {
        n,
        k,
        space_dim: dim,
        components,
        accounted,
    })
}

/// [`casimir_decomposition`] at rank two against the summands of
/// [`crate::repdim::rank2_su_summands`] that exist for this `n`.
pub fn rank2_branching_check(
    n: usize,
    budget: &OracleBudget,
) -> Result<(CasimirReport, Vec<BigInt>), Error> {
    let summands = rank2_su_summands(n)?;
    let labels: Vec<Vec<u32>> = summands.iter().filter_map(|s| s.labels.clone()).collect();
    let dims = summands
        .iter()
        .filter(|s| s.labels.is_some())
        .map(|s| s.dim.clone())
        .collect();
    Ok((casimir_decomposition(n, 2, &labels, budget)?, dims))
}
