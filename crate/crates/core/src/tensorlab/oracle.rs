use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::ambient::{build_ambient, OracleBudget};
use super::constraints::{derivation_int, pair_count, traces_int};
use super::index::{combination, dot, finish_small, multisets, next_permutation, Indexer};
use super::young::{apply_young_small, young_space_on, young_two_row_space_with, TensorSubspace};
use crate::error::Error;
use crate::exactnum::{
    kernel_of_columns, make_primitive, rank, ExactMatrix, IntVec, Rational, SparseVec,
};

fn relation_coeffs(rel: &SparseVec, positions: &[usize]) -> Vec<(usize, BigInt)> {
    rel.iter()
        .map(|(j, x)| {
            debug_assert!(x.is_integer());
            (positions[*j], x.to_integer())
        })
        .collect()
}

/// Multiset of `⌊α/2⌋` over the slots of a basis tensor index; `J` only
/// moves indices within a pair, so its action preserves this.
fn pair_content(ix: &Indexer, idx: usize) -> Vec<usize> {
    let mut t = vec![0usize; ix.slots];
    ix.decode(idx, &mut t);
    let mut c: Vec<usize> = t.into_iter().map(|a| a / 2).collect();
    c.sort_unstable();
    c
}

fn trace_rows(d: usize, slots: usize) -> usize {
    if slots < 2 {
        0
    } else {
        pair_count(slots) * Indexer::new(d, slots - 2).size()
    }
}

/// Basis of the rank-`k` Killing-tensor model for `CP_n`: two-row Young
/// tensors on `R^{2n+2}` killed by the derivation `JΣ` and by every
/// `J^{αβ}` trace.
///
/// The derivation kernel is found block by block (blocks of equal pair
/// content), then the traces are imposed on that kernel.
pub fn oracle_cpn_space_with(
    n: usize,
    k: usize,
    budget: &OracleBudget,
) -> Result<TensorSubspace, Error> {
    let model = build_ambient(n);
    let young = young_two_row_space_with(n, k, budget)?;
    let slots = 2 * k;
    let ix = Indexer::new(model.d, slots);

    let mut blocks: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (j, v) in young.vectors.iter().enumerate() {
        blocks.entry(pair_content(&ix, v[0].0)).or_default().push(j);
    }
    let mut invariant = Vec::new();
    for members in blocks.values() {
        let images: Vec<IntVec> = members
            .iter()
            .map(|&j| derivation_int(&model, slots, &young.vectors[j]))
            .collect();
        for rel in kernel_of_columns(ix.size(), images) {
            let mut v = combination(&relation_coeffs(&rel, members), &young.vectors);
            make_primitive(&mut v);
            invariant.push(v);
        }
    }

    let images: Vec<IntVec> = invariant
        .iter()
        .map(|v| traces_int(&model, slots, v))
        .collect();
    let positions: Vec<usize> = (0..invariant.len()).collect();
    let mut out = Vec::new();
    for rel in kernel_of_columns(trace_rows(model.d, slots), images) {
        let mut v = combination(&relation_coeffs(&rel, &positions), &invariant);
        make_primitive(&mut v);
        out.push(v);
    }
    Ok(TensorSubspace::from_vectors(model.d, k, out))
}

pub fn oracle_cpn_space(n: usize, k: usize) -> Result<TensorSubspace, Error> {
    oracle_cpn_space_with(n, k, &OracleBudget::from_env())
}

/// Dimension of [`oracle_cpn_space`].
pub fn oracle_cpn_dim(n: usize, k: usize) -> Result<usize, Error> {
    Ok(oracle_cpn_space(n, k)?.dim())
}

pub fn oracle_cpn_dim_with(n: usize, k: usize, budget: &OracleBudget) -> Result<usize, Error> {
    Ok(oracle_cpn_space_with(n, k, budget)?.dim())
}

/// The same dimension from one joint kernel of the stacked derivation and
/// trace images, without blocking. Slower; used as a cross-check.
pub fn oracle_cpn_dim_direct(n: usize, k: usize, budget: &OracleBudget) -> Result<usize, Error> {
    let model = build_ambient(n);
    let young = young_two_row_space_with(n, k, budget)?;
    let slots = 2 * k;
    let offset = Indexer::new(model.d, slots).size();
    let images: Vec<IntVec> = young
        .vectors
        .iter()
        .map(|v| {
            let mut img = derivation_int(&model, slots, v);
            img.extend(
                traces_int(&model, slots, v)
                    .into_iter()
                    .map(|(i, c)| (i + offset, c)),
            );
            img
        })
        .collect();
    Ok(kernel_of_columns(offset + trace_rows(model.d, slots), images).len())
}

/// Two-row Young space on `R^{n+1}`, whose dimension is the number of
/// rank-`k` Killing tensors on the `n`-sphere.
pub fn oracle_sphere_dim(n: usize, k: usize) -> Result<usize, Error> {
    oracle_sphere_dim_with(n, k, &OracleBudget::from_env())
}

pub fn oracle_sphere_dim_with(n: usize, k: usize, budget: &OracleBudget) -> Result<usize, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(young_space_on(n + 1, k, budget)?.dim())
}

/// Rank-one solutions: skew forms commuting with `J` and trace-free, i.e.
/// the Killing fields of `CP_n`.
pub fn killing_field_space(n: usize) -> Result<TensorSubspace, Error> {
    oracle_cpn_space_with(n, 1, &OracleBudget::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub n: usize,
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl GenerationReport {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank
    }
}

/// Symmetric product of Killing fields `X_{s_1} ⊙ … ⊙ X_{s_k}` placed in the
/// columns `(i, k+i)`, before symmetrization.
fn symmetric_product(
    ix: &Indexer,
    k: usize,
    fields: &[Vec<(usize, usize, i128)>],
    s: &[usize],
) -> HashMap<usize, i128> {
    let mut acc = HashMap::new();
    let mut arr = s.to_vec();
    let mut tuple = vec![0usize; 2 * k];
    loop {
        fill(ix, k, fields, &arr, 0, 1, &mut tuple, &mut acc);
        if !next_permutation(&mut arr) {
            break;
        }
    }
    acc
}

#[allow(clippy::too_many_arguments)]
fn fill(
    ix: &Indexer,
    k: usize,
    fields: &[Vec<(usize, usize, i128)>],
    arr: &[usize],
    i: usize,
    c: i128,
    tuple: &mut [usize],
    acc: &mut HashMap<usize, i128>,
) {
    if i == k {
        *acc.entry(ix.encode(tuple)).or_insert(0) += c;
        return;
    }
    for &(a, b, x) in &fields[arr[i]] {
        tuple[i] = a;
        tuple[k + i] = b;
        fill(ix, k, fields, arr, i + 1, c * x, tuple, acc);
    }
}

/// Rank of the map from `⊙^k` of the Killing fields to the rank-`k`
/// solution space: symmetric product, Young symmetrizer, then orthogonal
/// projection onto the solution space.
pub fn generation_rank(n: usize, k: usize) -> Result<GenerationReport, Error> {
    generation_rank_with(n, k, &OracleBudget::from_env())
}

pub fn generation_rank_with(
    n: usize,
    k: usize,
    budget: &OracleBudget,
) -> Result<GenerationReport, Error> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let target = oracle_cpn_space_with(n, k, budget)?;
    let killing = killing_field_space(n)?;
    let d = killing.d;
    let fields: Vec<Vec<(usize, usize, i128)>> = killing
        .vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|(idx, c)| {
                    let x = i128::try_from(c)
                        .map_err(|_| Error::Unsupported("Killing field entry too large".into()))?;
                    Ok((idx / d, idx % d, x))
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<_, _>>()?;
    let ix = Indexer::new(d, 2 * k);
    let sources = multisets(fields.len(), k);
    let mut trip = Vec::new();
    for (r, s) in sources.iter().enumerate() {
        let t = symmetric_product(&ix, k, &fields, s);
        let yt = finish_small(apply_young_small(&ix, k, &t));
        for (c, q) in target.vectors.iter().enumerate() {
            let ip = dot(&yt, q);
            if ip != BigInt::from(0) {
                trip.push((r, c, Rational::from_integer(ip)));
            }
        }
    }
    let m = ExactMatrix::from_triplets(sources.len(), target.dim(), trip)?;
    Ok(GenerationReport {
        n,
        k,
        source_dim: sources.len(),
        target_dim: target.dim(),
        rank: rank(&m),
    })
}
