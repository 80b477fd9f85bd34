use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::ambient::OracleBudget;
use super::index::{finish_big, finish_small, multisets, next_permutation, permutations, Indexer};
use crate::error::Error;
use crate::exactnum::{int_to_rational, Echelon, ExactMatrix, IntVec, SparseVec};

/// Subspace of `(R^d)^{⊗2k}` given by a basis of exact columns.
#[derive(Clone, Debug)]
pub struct TensorSubspace {
    pub d: usize,
    pub k: usize,
    pub basis: ExactMatrix,
    pub(crate) vectors: Vec<IntVec>,
}

impl TensorSubspace {
    pub(crate) fn from_vectors(d: usize, k: usize, vectors: Vec<IntVec>) -> Self {
        let size = Indexer::new(d, 2 * k).size();
        let basis =
            ExactMatrix::from_columns(size, vectors.iter().map(|v| int_to_rational(v)).collect());
        Self {
            d,
            k,
            basis,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// `d^{2k}`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Adds `c · A(e_tuple)` to `acc`, where `A` antisymmetrizes each column
/// `(i, k+i)`.
fn antisymmetrize_into(
    ix: &Indexer,
    k: usize,
    tuple: &[usize],
    c: i128,
    acc: &mut HashMap<usize, i128>,
) {
    let mut t = tuple.to_vec();
    for mask in 0u32..(1 << k) {
        t.copy_from_slice(tuple);
        for i in 0..k {
            if mask >> i & 1 == 1 {
                t.swap(i, k + i);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { c } else { -c };
        *acc.entry(ix.encode(&t)).or_insert(0) += sign;
    }
}

/// `Y(e_I)` up to the positive factor `Π m_j!`, for `I` with row contents `r1`, `r2`.
fn young_generator(ix: &Indexer, k: usize, r1: &[usize], r2: &[usize]) -> IntVec {
    let mut acc = HashMap::new();
    let mut a1 = r1.to_vec();
    let mut tuple = vec![0usize; 2 * k];
    loop {
        let mut a2 = r2.to_vec();
        loop {
            tuple[..k].copy_from_slice(&a1);
            tuple[k..].copy_from_slice(&a2);
            antisymmetrize_into(ix, k, &tuple, 1, &mut acc);
            if !next_permutation(&mut a2) {
                break;
            }
        }
        if !next_permutation(&mut a1) {
            break;
        }
    }
    finish_small(acc)
}

/// Image of the two-row Young symmetrizer on `(R^d)^{⊗2k}`.
///
/// Slots `0..k` form the first row and `k..2k` the second; column `i` is the
/// slot pair `(i, k+i)`. The symmetrizer symmetrizes rows first and then
/// antisymmetrizes columns.
pub fn young_space_on(d: usize, k: usize, budget: &OracleBudget) -> Result<TensorSubspace, Error> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "ambient dimension must be positive".into(),
        ));
    }
    budget.check(d, 2 * k)?;
    let ix = Indexer::new(d, 2 * k);
    let rows = multisets(d, k);
    // Y preserves the multiset of all indices, so eliminate block by block
    let mut blocks: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, r1) in rows.iter().enumerate() {
        for (j, r2) in rows.iter().enumerate() {
            let mut content: Vec<usize> = r1.iter().chain(r2).copied().collect();
            content.sort_unstable();
            blocks.entry(content).or_default().push((i, j));
        }
    }
    let mut vectors = Vec::new();
    for pairs in blocks.values() {
        let mut ech = Echelon::new(usize::MAX);
        for &(i, j) in pairs {
            let v = young_generator(&ix, k, &rows[i], &rows[j]);
            if !v.is_empty() {
                ech.insert(v);
            }
        }
        vectors.extend(ech.into_rows());
    }
    Ok(TensorSubspace::from_vectors(d, k, vectors))
}

/// [`young_space_on`] for the model of `CP_n`, `d = 2n + 2`.
pub fn young_two_row_space(n: usize, k: usize) -> Result<TensorSubspace, Error> {
    young_two_row_space_with(n, k, &OracleBudget::from_env())
}

pub fn young_two_row_space_with(
    n: usize,
    k: usize,
    budget: &OracleBudget,
) -> Result<TensorSubspace, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    young_space_on(2 * n + 2, k, budget)
}

pub(crate) fn apply_young_small(
    ix: &Indexer,
    k: usize,
    t: &HashMap<usize, i128>,
) -> HashMap<usize, i128> {
    let perms = permutations(k);
    let mut acc = HashMap::new();
    let mut tuple = vec![0usize; 2 * k];
    let mut moved = vec![0usize; 2 * k];
    for (&idx, &c) in t {
        if c == 0 {
            continue;
        }
        ix.decode(idx, &mut tuple);
        for p in &perms {
            for q in &perms {
                for i in 0..k {
                    moved[i] = tuple[p[i]];
                    moved[k + i] = tuple[k + q[i]];
                }
                antisymmetrize_into(ix, k, &moved, c, &mut acc);
            }
        }
    }
    acc
}

/// Applies the Young symmetrizer to an integer tensor with `2k` slots over `R^d`.
pub(crate) fn apply_young_int(d: usize, k: usize, t: &IntVec) -> IntVec {
    let ix = Indexer::new(d, 2 * k);
    let perms = permutations(k);
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut tuple = vec![0usize; 2 * k];
    let mut moved = vec![0usize; 2 * k];
    for (idx, c) in t {
        ix.decode(*idx, &mut tuple);
        let mut unit = HashMap::new();
        for p in &perms {
            for q in &perms {
                for i in 0..k {
                    moved[i] = tuple[p[i]];
                    moved[k + i] = tuple[k + q[i]];
                }
                antisymmetrize_into(&ix, k, &moved, 1, &mut unit);
            }
        }
        for (j, u) in unit {
            if u != 0 {
                super::index::add_big(&mut acc, j, c * BigInt::from(u));
            }
        }
    }
    finish_big(acc)
}

/// Applies the Young symmetrizer to a rational tensor with `2k` slots over `R^d`.
pub fn apply_young(d: usize, k: usize, t: &[(usize, crate::exactnum::Rational)]) -> SparseVec {
    let den = crate::exactnum::common_denominator(t.iter().map(|(_, x)| x));
    let scaled: IntVec = t
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&den / x.denom())))
        .collect();
    let out = apply_young_int(d, k, &scaled);
    let den = crate::exactnum::from_big(den);
    int_to_rational(&out)
        .into_iter()
        .map(|(i, x)| (i, x / &den))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rank, Rational};
    use crate::repdim::{sphere_killing_dim, TensorSpaceSpec};

    fn big() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn exterior_square_of_r4() {
        assert_eq!(young_two_row_space_with(1, 1, &big()).unwrap().dim(), 6);
    }

    #[test]
    fn shape_two_two_dims() {
        assert_eq!(young_space_on(3, 2, &big()).unwrap().dim(), 6);
        assert_eq!(young_two_row_space_with(1, 2, &big()).unwrap().dim(), 20);
    }

    #[test]
    fn basis_is_independent() {
        let s = young_two_row_space_with(1, 2, &big()).unwrap();
        assert_eq!(rank(&s.basis), s.dim());
        assert_eq!(s.ambient_dim(), 256);
    }

    #[test]
    fn matches_sphere_formula() {
        for (d, k) in [(2, 1), (2, 3), (3, 1), (3, 3), (4, 2), (5, 1), (5, 2)] {
            let s = young_space_on(d, k, &big()).unwrap();
            let expected = sphere_killing_dim(TensorSpaceSpec { n: d - 1, k }).unwrap();
            assert_eq!(BigInt::from(s.dim()), expected, "d={d} k={k}");
        }
    }

    #[test]
    fn symmetrizer_is_a_quasi_projector() {
        // Y^2 = k!(k+1)! Y
        for (d, k, c) in [(3, 1, 2), (3, 2, 12), (2, 3, 144)] {
            let s = young_space_on(d, k, &big()).unwrap();
            for v in &s.vectors {
                let yv = apply_young_int(d, k, v);
                let scaled: IntVec = v.iter().map(|(i, a)| (*i, a * BigInt::from(c))).collect();
                assert_eq!(yv, scaled);
            }
        }
    }

    #[test]
    fn rational_entry_point() {
        let t = vec![(1usize, Rational::new(1.into(), 2.into()))];
        // e_0 ⊗ e_1 in (R^2)^{⊗2}, k = 1
        let y = apply_young(2, 1, &t);
        assert_eq!(
            y,
            vec![
                (1, Rational::new(1.into(), 2.into())),
                (2, Rational::new((-1).into(), 2.into()))
            ]
        );
        assert_eq!(apply_young(2, 1, &[]), vec![]);
    }

    #[test]
    fn over_budget_is_refused() {
        assert!(matches!(
            young_two_row_space_with(3, 3, &big()),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
