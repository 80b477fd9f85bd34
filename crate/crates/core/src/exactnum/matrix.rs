//! Sparse matrices over the rationals with exact rank and null space.
//!
//! Elimination runs on primitive integer vectors: each vector is cleared of
//! denominators once, and every elimination step is the cross-multiplied
//! combination `b*v - a*p` followed by removal of the common content. No
//! division ever leaves the integers, and the content removal keeps entry
//! growth in check on the wide, very sparse systems produced by Young
//! symmetrizers.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, content, Rational};
use crate::error::Error;

/// Sparse vector of rationals: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Sparse vector of integers: `(index, value)` pairs sorted by index, no zeros.
pub(crate) type IntVec = Vec<(usize, BigInt)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let columns = (0..size).map(|i| vec![(i, Rational::one())]).collect();
        Self {
            rows: size,
            cols: size,
            columns,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<HashMap<usize, Rational>> = vec![HashMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            *acc[c].entry(r).or_insert_with(Rational::zero) += v;
        }
        let columns = acc
            .into_iter()
            .map(|m| {
                let mut col: SparseVec = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                col.sort_unstable_by_key(|&(i, _)| i);
                col
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            columns,
        })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[c].push((r, v.clone()));
                }
            }
        }
        Self {
            rows: nrows,
            cols: ncols,
            columns,
        }
    }

    pub fn from_dense_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    ///
    /// Panics if an entry is zero, out of range, or the entries are unsorted.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for col in &columns {
            assert!(
                col.windows(2).all(|w| w[0].0 < w[1].0),
                "column entries must be strictly increasing"
            );
            assert!(col.iter().all(|(i, v)| *i < rows && !v.is_zero()));
        }
        Self {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, Rational)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        let col = &self.columns[c];
        match col.binary_search_by_key(&r, |&(i, _)| i) {
            Ok(pos) => col[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// All stored entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let columns = other.columns.iter().map(|x| self.mul_sparse(x)).collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    /// Product with a sparse column vector.
    pub fn mul_sparse(&self, x: &[(usize, Rational)]) -> SparseVec {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (j, xj) in x {
            for (i, a) in &self.columns[*j] {
                *acc.entry(*i).or_insert_with(Rational::zero) += a * xj;
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Stacks `self` on top of `below`; both must have the same column count.
    pub fn vstack(&self, below: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (below.rows, below.cols),
            });
        }
        let columns = self
            .columns
            .iter()
            .zip(&below.columns)
            .map(|(top, bottom)| {
                let mut col = top.clone();
                col.extend(bottom.iter().map(|(r, v)| (r + self.rows, v.clone())));
                col
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            columns,
        })
    }

    /// Writes the matrix in the sparse text format: a `rows cols` header
    /// followed by one `row col numerator/denominator` line per stored entry.
    pub fn to_sparse_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in self.entries() {
            let _ = writeln!(out, "{} {} {}/{}", r, c, v.numer(), v.denom());
        }
        out
    }

    pub fn from_sparse_text(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let mut dims = header.split_whitespace().map(usize::from_str);
        let (rows, cols) = match (dims.next(), dims.next(), dims.next()) {
            (Some(Ok(r)), Some(Ok(c)), None) => (r, c),
            _ => return Err(Error::Parse(format!("bad header line: {header:?}"))),
        };
        let mut triplets = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad entry line: {line:?}")));
            }
            let r = parts[0]
                .parse()
                .map_err(|_| Error::Parse(line.to_string()))?;
            let c = parts[1]
                .parse()
                .map_err(|_| Error::Parse(line.to_string()))?;
            let v: Rational = parts[2]
                .parse()
                .map_err(|_| Error::Parse(line.to_string()))?;
            triplets.push((r, c, v));
        }
        Self::from_triplets(rows, cols, triplets)
    }
}

/// Rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    let vectors: Vec<IntVec> = if m.cols <= m.rows {
        m.columns.iter().map(|c| to_primitive(c)).collect()
    } else {
        m.transpose()
            .columns
            .iter()
            .map(|c| to_primitive(c))
            .collect()
    };
    rank_of_vectors(vectors)
}

pub(crate) fn rank_of_vectors(mut vectors: Vec<IntVec>) -> usize {
    vectors.retain(|v| !v.is_empty());
    // sparsest first: keeps fill-in low and does not affect the rank
    vectors.sort_by_key(Vec::len);
    let mut ech = Echelon::new(usize::MAX);
    for v in vectors {
        ech.insert(v);
    }
    ech.len()
}

/// Basis of the right null space `{x : m x = 0}`, one basis vector per column.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    // to_primitive rescales each column; undo that on the relations
    let scales: Vec<Rational> = m
        .columns
        .iter()
        .map(|c| match (c.first(), to_primitive(c).first()) {
            (Some((_, x)), Some((_, a))) => Rational::from_integer(a.clone()) / x,
            _ => Rational::one(),
        })
        .collect();
    let kernel: Vec<SparseVec> =
        kernel_of_columns(m.rows, m.columns.iter().map(|c| to_primitive(c)).collect())
            .into_iter()
            .map(|rel| {
                let mut rel: SparseVec =
                    rel.into_iter().map(|(j, x)| (j, x * &scales[j])).collect();
                let den = common_denominator(rel.iter().map(|(_, x)| x));
                for (_, x) in rel.iter_mut() {
                    *x *= Rational::from_integer(den.clone());
                }
                rel
            })
            .collect();
    ExactMatrix {
        rows: m.cols,
        cols: kernel.len(),
        columns: kernel,
    }
}

/// Linear relations among the given integer column vectors of length `rows`:
/// returns coefficient vectors `x` (indexed by input position) with
/// `sum_j x_j v_j = 0`, forming a basis of all such relations.
pub(crate) fn kernel_of_columns(rows: usize, vectors: Vec<IntVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new(rows);
    let mut kernel = Vec::new();
    for (j, mut v) in vectors.into_iter().enumerate() {
        v.push((rows + j, BigInt::one()));
        make_primitive(&mut v);
        if let Some(residual) = ech.insert(v) {
            let rel: SparseVec = residual
                .into_iter()
                .map(|(i, a)| (i - rows, Rational::from_integer(a)))
                .collect();
            kernel.push(rel);
        }
    }
    kernel
}

/// Clears denominators and removes the common content.
pub(crate) fn to_primitive(v: &[(usize, Rational)]) -> IntVec {
    let den = common_denominator(v.iter().map(|(_, x)| x));
    let mut out: IntVec = v
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&den / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn make_primitive(v: &mut IntVec) {
    let g = content(v.iter().map(|(_, a)| a));
    if g.is_zero() {
        return;
    }
    let flip = v.first().is_some_and(|(_, a)| a.is_negative());
    if g.is_one() && !flip {
        return;
    }
    for (_, a) in v.iter_mut() {
        if !g.is_one() {
            *a = &*a / &g;
        }
        if flip {
            *a = -&*a;
        }
    }
}

pub(crate) fn int_to_rational(v: &[(usize, BigInt)]) -> SparseVec {
    v.iter()
        .map(|(i, a)| (*i, Rational::from_integer(a.clone())))
        .collect()
}

/// Row-echelon store of primitive integer vectors with distinct leading indices.
///
/// Indices at or beyond `limit` are bookkeeping (augmentation) and are never
/// used as pivots.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    limit: usize,
    rows: Vec<IntVec>,
    by_lead: HashMap<usize, usize>,
}

impl Echelon {
    pub(crate) fn new(limit: usize) -> Self {
        Self {
            limit,
            rows: Vec::new(),
            by_lead: HashMap::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub(crate) fn into_rows(self) -> Vec<IntVec> {
        self.rows
    }

    /// Reduces `v` until its leading index is not a pivot.
    pub(crate) fn reduce(&self, mut v: IntVec) -> IntVec {
        while let Some((lead, a)) = v.first() {
            if *lead >= self.limit {
                break;
            }
            let Some(&p) = self.by_lead.get(lead) else {
                break;
            };
            let pivot = &self.rows[p];
            let b = &pivot[0].1;
            let g = a.gcd(b);
            let va = b / &g;
            let pa = a / &g;
            v = combine(&v, &va, pivot, &pa);
            make_primitive(&mut v);
        }
        v
    }

    /// Inserts `v`. Returns `None` if it extended the span, or the reduced
    /// vector (whose entries all lie at or beyond `limit`) if it was dependent.
    pub(crate) fn insert(&mut self, v: IntVec) -> Option<IntVec> {
        let v = self.reduce(v);
        match v.first() {
            Some((lead, _)) if *lead < self.limit => {
                self.by_lead.insert(*lead, self.rows.len());
                self.rows.push(v);
                None
            }
            _ => Some(v),
        }
    }

    /// Coordinates of `v` with respect to the stored rows, or `None` if `v`
    /// is outside their span. Rows are indexed in insertion order and taken
    /// as stored, i.e. after reduction to primitive form.
    pub(crate) fn coordinates(&self, v: &[(usize, Rational)]) -> Option<Vec<Rational>> {
        let mut residual: HashMap<usize, Rational> = v.iter().cloned().collect();
        let mut coords = vec![Rational::zero(); self.rows.len()];
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i][0].0);
        for i in order {
            let row = &self.rows[i];
            let lead = row[0].0;
            let Some(r) = residual.get(&lead).cloned() else {
                continue;
            };
            if r.is_zero() {
                continue;
            }
            let c = r / Rational::from_integer(row[0].1.clone());
            for (j, a) in row {
                let e = residual.entry(*j).or_insert_with(Rational::zero);
                *e -= &c * Rational::from_integer(a.clone());
            }
            coords[i] = c;
        }
        residual.values().all(Zero::is_zero).then_some(coords)
    }
}

/// `x*u - y*w` over sorted sparse integer vectors.
fn combine(u: &IntVec, x: &BigInt, w: &IntVec, y: &BigInt) -> IntVec {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let take_u = j >= w.len() || (i < u.len() && u[i].0 < w[j].0);
        let take_w = i >= u.len() || (j < w.len() && w[j].0 < u[i].0);
        if take_u {
            out.push((u[i].0, &u[i].1 * x));
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(&w[j].1 * y)));
            j += 1;
        } else {
            let val = &u[i].1 * x - &w[j].1 * y;
            if !val.is_zero() {
                out.push((u[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};
    use proptest::prelude::*;

    fn dense_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    fn dense(rows: &[Vec<i64>]) -> ExactMatrix {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        ExactMatrix::from_dense_i64(&refs)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(5)), 5);
        assert_eq!(rank(&ExactMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&ExactMatrix::from_dense_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&ExactMatrix::identity(4)).cols(), 0);

        let k = kernel_basis(&ExactMatrix::zeros(2, 3));
        assert_eq!(k.cols(), 3);
        assert_eq!(rank(&k), 3);

        let k = kernel_basis(&ExactMatrix::from_dense_i64(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        let (a, b) = (k.get(0, 0), k.get(1, 0));
        assert!(!a.is_zero());
        assert_eq!(a, -b);
    }

    #[test]
    fn rational_entries_are_handled() {
        let m =
            ExactMatrix::from_dense(&[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), rat(1)]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn duplicate_triplets_sum_and_cancel() {
        let m =
            ExactMatrix::from_triplets(2, 2, vec![(0, 0, rat(1)), (0, 0, rat(-1)), (1, 1, rat(2))])
                .unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(ExactMatrix::from_triplets(2, 2, vec![(2, 0, rat(1))]).is_err());
    }

    #[test]
    fn sparse_text_round_trip() {
        let m = ExactMatrix::from_dense(&[
            vec![ratio(-7, 3), rat(0), rat(5)],
            vec![rat(0), ratio(1, 9), rat(0)],
        ]);
        let text = m.to_sparse_text();
        assert!(text.starts_with("2 3\n"));
        assert!(text.contains("0 0 -7/3"));
        assert_eq!(ExactMatrix::from_sparse_text(&text).unwrap(), m);
    }

    #[test]
    fn coordinates_in_echelon_span() {
        let mut ech = Echelon::new(usize::MAX);
        ech.insert(to_primitive(&[(0, rat(1)), (2, rat(1))]));
        ech.insert(to_primitive(&[(1, rat(2)), (2, rat(-2))]));
        let c = ech
            .coordinates(&[(0, rat(3)), (1, rat(4)), (2, rat(-1))])
            .unwrap();
        // the second row is stored as e1 - e2
        assert_eq!(c, vec![rat(3), rat(4)]);
        assert!(ech.coordinates(&[(2, rat(1))]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in dense_strategy()) {
            let m = dense(&rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(rank(&k), k.cols());
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            rows in dense_strategy(),
            seed in any::<u64>(),
            scale in prop_oneof![-5i64..-1, 1i64..6],
        ) {
            let m = dense(&rows);
            let mut permuted = rows.clone();
            let n = permuted.len();
            permuted.rotate_left((seed as usize) % n);
            for row in permuted.iter_mut() {
                row.reverse();
            }
            let target = (seed as usize / 7) % n;
            for v in permuted[target].iter_mut() {
                *v *= scale;
            }
            prop_assert_eq!(rank(&dense(&permuted)), rank(&m));
            prop_assert_eq!(rank(&m.transpose()), rank(&m));
        }
    }
}
