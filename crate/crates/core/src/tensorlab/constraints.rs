use std::collections::HashMap;

use num_bigint::BigInt;

use super::ambient::AmbientModel;
use super::index::{add_big, finish_big, Indexer};
use super::young::TensorSubspace;
use crate::exactnum::{int_to_rational, ExactMatrix, IntVec};

/// Sum over slots of a linear map acting on that slot; `cols[b]` lists
/// `(a, X[a][b])`.
pub(crate) fn act_on_slots(ix: &Indexer, cols: &[Vec<(usize, i64)>], t: &IntVec) -> IntVec {
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut tuple = vec![0usize; ix.slots];
    for (idx, c) in t {
        ix.decode(*idx, &mut tuple);
        for s in 0..ix.slots {
            let b = tuple[s];
            for &(a, x) in &cols[b] {
                tuple[s] = a;
                add_big(&mut acc, ix.encode(&tuple), c * BigInt::from(x));
            }
            tuple[s] = b;
        }
    }
    finish_big(acc)
}

/// The derivation `JΣ`: `J` applied to each slot in turn, summed.
pub(crate) fn derivation_int(model: &AmbientModel, slots: usize, t: &IntVec) -> IntVec {
    act_on_slots(&Indexer::new(model.d, slots), &model.jmix_columns(), t)
}

/// Number of unordered slot pairs.
pub(crate) fn pair_count(slots: usize) -> usize {
    slots * slots.saturating_sub(1) / 2
}

/// All contractions with `J^{αβ}`, one block of `d^{slots-2}` rows per
/// unordered slot pair `(s, t)`, pairs in lexicographic order.
pub(crate) fn traces_int(model: &AmbientModel, slots: usize, t: &IntVec) -> IntVec {
    if slots < 2 {
        return Vec::new();
    }
    let full = Indexer::new(model.d, slots);
    let rest = Indexer::new(model.d, slots - 2);
    let block = rest.size();
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut tuple = vec![0usize; slots];
    let mut reduced = vec![0usize; slots - 2];
    for (idx, c) in t {
        full.decode(*idx, &mut tuple);
        let mut pair = 0;
        for s in 0..slots {
            for u in s + 1..slots {
                let j = model.jskew_entry(tuple[s], tuple[u]);
                if j != 0 {
                    let mut w = 0;
                    for (v, &x) in tuple.iter().enumerate() {
                        if v != s && v != u {
                            reduced[w] = x;
                            w += 1;
                        }
                    }
                    add_big(
                        &mut acc,
                        pair * block + rest.encode(&reduced),
                        c * BigInt::from(j),
                    );
                }
                pair += 1;
            }
        }
    }
    finish_big(acc)
}

/// Rational front ends for single tensors with `slots` slots over the model space.
pub fn derivation_action(
    model: &AmbientModel,
    slots: usize,
    t: &[(usize, crate::exactnum::Rational)],
) -> crate::exactnum::SparseVec {
    apply_scaled(t, |v| derivation_int(model, slots, v))
}

pub fn j_traces(
    model: &AmbientModel,
    slots: usize,
    t: &[(usize, crate::exactnum::Rational)],
) -> crate::exactnum::SparseVec {
    apply_scaled(t, |v| traces_int(model, slots, v))
}

fn apply_scaled(
    t: &[(usize, crate::exactnum::Rational)],
    f: impl Fn(&IntVec) -> IntVec,
) -> crate::exactnum::SparseVec {
    let den = crate::exactnum::common_denominator(t.iter().map(|(_, x)| x));
    let v: IntVec = t
        .iter()
        .map(|(i, x)| (*i, x.numer() * (&den / x.denom())))
        .collect();
    let den = crate::exactnum::from_big(den);
    int_to_rational(&f(&v))
        .into_iter()
        .map(|(i, x)| (i, x / &den))
        .collect()
}

/// Columns are the `J^{αβ}` traces of the basis columns of `space`; its
/// kernel is the trace-free part, in subspace coordinates.
pub fn j_trace_constraints(space: &TensorSubspace, model: &AmbientModel) -> ExactMatrix {
    let slots = 2 * space.k;
    let rows = pair_count(slots) * Indexer::new(model.d, slots.saturating_sub(2)).size();
    let rows = if slots < 2 { 0 } else { rows };
    ExactMatrix::from_columns(
        rows,
        space
            .vectors
            .iter()
            .map(|v| int_to_rational(&traces_int(model, slots, v)))
            .collect(),
    )
}

/// Columns are `JΣ` of the basis columns of `space`.
pub fn derivation_constraints(space: &TensorSubspace, model: &AmbientModel) -> ExactMatrix {
    let slots = 2 * space.k;
    ExactMatrix::from_columns(
        space.ambient_dim(),
        space
            .vectors
            .iter()
            .map(|v| int_to_rational(&derivation_int(model, slots, v)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rank, rat, Rational};
    use crate::tensorlab::ambient::{build_ambient, OracleBudget};
    use crate::tensorlab::young::young_two_row_space_with;

    fn jskew_tensor(model: &AmbientModel) -> Vec<(usize, Rational)> {
        let mut v: Vec<_> = model
            .jskew
            .entries()
            .map(|(r, c, x)| (r * model.d + c, x.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    #[test]
    fn trace_of_j_is_d() {
        for n in 1..4 {
            let m = build_ambient(n);
            let tr = j_traces(&m, 2, &jskew_tensor(&m));
            assert_eq!(tr, vec![(0, rat(m.d as i64))]);
        }
    }

    #[test]
    fn uncoupled_pair_is_trace_free() {
        let m = build_ambient(1);
        // e_1 ∧ e_3
        let t = vec![(1 * 4 + 3, rat(1)), (3 * 4 + 1, rat(-1))];
        assert!(j_traces(&m, 2, &t).is_empty());
        assert!(j_traces(&m, 2, &[]).is_empty());
    }

    #[test]
    fn j_is_invariant() {
        let m = build_ambient(2);
        assert!(derivation_action(&m, 2, &jskew_tensor(&m)).is_empty());
        // e_0 ∧ e_1 with J e_0 = e_1
        let t = vec![(1, rat(1)), (m.d, rat(-1))];
        assert!(derivation_action(&m, 2, &t).is_empty());
    }

    #[test]
    fn derivation_commutes_with_traces() {
        let budget = OracleBudget::default();
        for (n, k) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
            let m = build_ambient(n);
            let space = young_two_row_space_with(n, k, &budget).unwrap();
            let slots = 2 * k;
            for v in &space.vectors {
                let lhs = traces_int(&m, slots, &derivation_int(&m, slots, v));
                // derivation on each (2k-2)-slot block of the trace output
                let tr = traces_int(&m, slots, v);
                let block = Indexer::new(m.d, slots - 2).size();
                let mut by_pair: std::collections::BTreeMap<usize, IntVec> = Default::default();
                for (i, c) in tr {
                    by_pair.entry(i / block).or_default().push((i % block, c));
                }
                let mut rhs: IntVec = Vec::new();
                for (p, part) in by_pair {
                    for (i, c) in derivation_int(&m, slots - 2, &part) {
                        rhs.push((p * block + i, c));
                    }
                }
                rhs.sort_by_key(|(i, _)| *i);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn constraint_matrix_shapes() {
        let m = build_ambient(1);
        let space = young_two_row_space_with(1, 2, &OracleBudget::default()).unwrap();
        let tr = j_trace_constraints(&space, &m);
        assert_eq!((tr.rows(), tr.cols()), (6 * 16, 20));
        let der = derivation_constraints(&space, &m);
        assert_eq!((der.rows(), der.cols()), (256, 20));
        assert!(rank(&der) > 0 && rank(&tr) > 0);
    }
}
