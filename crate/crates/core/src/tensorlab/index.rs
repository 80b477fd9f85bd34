use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::IntVec;

/// Flattening of multi-indices in `(R^d)^{⊗ slots}`; slot 0 is the most
/// significant digit.
#[derive(Clone, Debug)]
pub(crate) struct Indexer {
    pub d: usize,
    pub slots: usize,
    stride: Vec<usize>,
}

impl Indexer {
    pub fn new(d: usize, slots: usize) -> Self {
        let mut stride = vec![1usize; slots];
        for s in (0..slots.saturating_sub(1)).rev() {
            stride[s] = stride[s + 1] * d;
        }
        Self { d, slots, stride }
    }

    pub fn size(&self) -> usize {
        self.d.pow(self.slots as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.stride).map(|(i, s)| i * s).sum()
    }

    pub fn decode(&self, mut idx: usize, out: &mut [usize]) {
        for s in (0..self.slots).rev() {
            out[s] = idx % self.d;
            idx /= self.d;
        }
    }
}

/// Steps `v` to the next lexicographic permutation; false after the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..k).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Nondecreasing sequences of length `k` with entries below `d`.
pub(crate) fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d == 0 && k > 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < d {
                let v = cur[i] + 1;
                for c in cur[i..].iter_mut() {
                    *c = v;
                }
                break;
            }
        }
    }
}

pub(crate) fn finish_small(acc: HashMap<usize, i128>) -> IntVec {
    let mut v: IntVec = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(i, c)| (i, BigInt::from(c)))
        .collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}

pub(crate) fn finish_big(acc: HashMap<usize, BigInt>) -> IntVec {
    let mut v: IntVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}

pub(crate) fn add_big(acc: &mut HashMap<usize, BigInt>, idx: usize, c: BigInt) {
    *acc.entry(idx).or_insert_with(BigInt::zero) += c;
}

/// `Σ_j x_j v_j` for integer coefficients `x`.
pub(crate) fn combination(coeffs: &[(usize, BigInt)], vectors: &[IntVec]) -> IntVec {
    let mut acc = HashMap::new();
    for (j, x) in coeffs {
        for (i, a) in &vectors[*j] {
            add_big(&mut acc, *i, x * a);
        }
    }
    finish_big(acc)
}

/// Standard inner product of two sorted sparse vectors.
pub(crate) fn dot(u: &IntVec, w: &IntVec) -> BigInt {
    let (mut i, mut j) = (0, 0);
    let mut s = BigInt::zero();
    while i < u.len() && j < w.len() {
        match u[i].0.cmp(&w[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &u[i].1 * &w[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        let ix = Indexer::new(3, 4);
        assert_eq!(ix.size(), 81);
        let mut t = [0; 4];
        for idx in 0..81 {
            ix.decode(idx, &mut t);
            assert_eq!(ix.encode(&t), idx);
        }
        assert_eq!(ix.encode(&[1, 0, 0, 0]), 27);
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
        let mut m = vec![0, 0, 1];
        let mut n = 1;
        while next_permutation(&mut m) {
            n += 1;
        }
        assert_eq!(n, 3);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(6, 3).len(), 56);
        assert_eq!(multisets(5, 0), vec![Vec::<usize>::new()]);
    }
}
