//! Kostka coefficients of skew shapes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partitions::{IntVector, Partition};
use crate::tableaux::{count_with_weight, enumerate_with_weight, SkewShape, Tableau};

/// `K_{shape, w}`: the number of tableaux of `shape` with weight `w`, over
/// the alphabet `1..=w.len()`. Zero when `|w|` differs from the number of
/// ordinary boxes.
pub fn kostka(shape: &SkewShape, w: &IntVector) -> u64 {
    count_with_weight(shape, w)
}

/// The coefficients of `s_shape(x1..xn)` in the monomial symmetric basis,
/// keyed by partitions with at most `n` parts. Zero coefficients are omitted.
pub fn schur_in_m_basis(shape: &SkewShape, n: usize) -> BTreeMap<Partition, u64> {
    Partition::of_size_with_len(shape.size(), n)
        .into_iter()
        .filter_map(|p| {
            let k = kostka(shape, &p.to_vector(n));
            (k > 0).then_some((p, k))
        })
        .collect()
}

/// A tableau of shape `k·outer/k·inner` and weight `k·w`: the `k`-fold
/// ⊠-power of the first tableau of `shape` with weight `w`.
pub fn stretch_positivity_check(shape: &SkewShape, w: &IntVector, k: usize) -> Result<Tableau> {
    let witness = enumerate_with_weight(shape, w)
        .into_iter()
        .next()
        .ok_or_else(|| Error::ZeroKostka(w.entries().to_vec()))?;
    witness.power(k)
}

/// Whether `K_{k·shape, k·w} > 0` implies `K_{shape, w} > 0` for this one
/// instance. `None` when the hypothesis fails, so there is nothing to check.
pub fn reverse_saturation(shape: &SkewShape, w: &IntVector, k: usize) -> Option<bool> {
    (kostka(&shape.scale(k), &w.scale(k as i64)) > 0).then(|| kostka(shape, w) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn v(e: &[i64]) -> IntVector {
        IntVector(e.to_vec())
    }

    #[test]
    fn kostka_examples() {
        let s = SkewShape::straight(part![2, 1]);
        assert_eq!(kostka(&s, &v(&[1, 1, 1])), 2);
        assert_eq!(kostka(&s, &v(&[2, 1, 0])), 1);
        assert_eq!(kostka(&s, &v(&[1, 1])), 0);
        assert_eq!(kostka(&s, &v(&[3, 0, 0])), 0);
    }

    #[test]
    fn m_basis_examples() {
        let m = schur_in_m_basis(&SkewShape::straight(part![1]), 2);
        assert_eq!(m, BTreeMap::from([(part![1], 1)]));
        let m = schur_in_m_basis(&SkewShape::straight(part![2, 1]), 3);
        assert_eq!(m, BTreeMap::from([(part![2, 1], 1), (part![1, 1, 1], 2)]));
        let m = schur_in_m_basis(&SkewShape::new(part![2, 2], part![1]).unwrap(), 2);
        assert_eq!(m, BTreeMap::from([(part![2, 1], 1)]));
    }

    #[test]
    fn stretch_witness_examples() {
        let t = stretch_positivity_check(&SkewShape::straight(part![1]), &v(&[1, 0]), 3).unwrap();
        assert_eq!(t.shape(), &SkewShape::straight(part![3]));
        assert_eq!(t.rows(), &[vec![1, 1, 1]]);

        let t = stretch_positivity_check(&SkewShape::straight(part![2, 1]), &v(&[1, 1, 1]), 2).unwrap();
        assert_eq!(t.shape(), &SkewShape::straight(part![4, 2]));
        assert_eq!(t.weight(), v(&[2, 2, 2]));
        assert!(t.is_valid_ssyt());

        let err = stretch_positivity_check(&SkewShape::straight(part![2]), &v(&[0, 0, 2]), 2);
        assert!(err.is_ok());
        let err = stretch_positivity_check(&SkewShape::straight(part![1, 1]), &v(&[2, 0]), 2);
        assert_eq!(err.unwrap_err(), Error::ZeroKostka(vec![2, 0]));
    }

    #[test]
    fn reverse_saturation_example() {
        let s = SkewShape::straight(part![2, 1]);
        assert_eq!(reverse_saturation(&s, &v(&[1, 1, 1]), 2), Some(true));
        assert_eq!(reverse_saturation(&s, &v(&[3, 0, 0]), 2), None);
    }
}
