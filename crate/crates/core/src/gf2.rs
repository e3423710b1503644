//! Linear dependency detection over GF(2) with subset tracking.
//!
//! Square-class conditions reduce to: does some nonempty subset of vectors
//! XOR to zero once the "allowed" coordinates are projected away? Gaussian
//! elimination answers this; a bitmask label per basis row recovers which
//! input vectors participate.

/// Find the first linear dependency among `vectors` over GF(2), processing
/// them in order. Each vector is a list of set column indices below `ncols`.
/// Returns the sorted indices of a nonempty subset XORing to zero, or `None`
/// if the vectors are independent. At most 128 vectors are supported.
pub fn first_dependency(vectors: &[Vec<usize>], ncols: usize) -> Option<Vec<usize>> {
    assert!(vectors.len() <= 128, "dependency tracking is limited to 128 vectors");
    let words = ncols.div_ceil(64).max(1);
    let mut basis: Vec<Option<(Vec<u64>, u128)>> = vec![None; ncols.max(1)];
    for (j, v) in vectors.iter().enumerate() {
        let mut bits = vec![0u64; words];
        for &c in v {
            debug_assert!(c < ncols, "column {c} out of range {ncols}");
            bits[c / 64] |= 1u64 << (c % 64);
        }
        let mut label: u128 = 1 << j;
        loop {
            let Some(pivot) = highest_bit(&bits) else {
                // Vector reduced to zero: the labels name the participants.
                return Some((0..=j).filter(|i| label >> i & 1 == 1).collect());
            };
            match &basis[pivot] {
                Some((row, row_label)) => {
                    for (b, r) in bits.iter_mut().zip(row) {
                        *b ^= r;
                    }
                    label ^= row_label;
                }
                None => {
                    basis[pivot] = Some((bits, label));
                    break;
                }
            }
        }
    }
    None
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    for (w, &word) in bits.iter().enumerate().rev() {
        if word != 0 {
            return Some(w * 64 + 63 - word.leading_zeros() as usize);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_vectors() {
        assert_eq!(first_dependency(&[vec![0], vec![1], vec![2]], 3), None);
        assert_eq!(first_dependency(&[vec![0, 1], vec![1, 2]], 3), None);
        assert_eq!(first_dependency(&[], 5), None);
    }

    #[test]
    fn simple_dependencies() {
        // Empty vector is already the zero combination.
        assert_eq!(first_dependency(&[vec![0], vec![]], 2), Some(vec![1]));
        // v0 + v1 = v2.
        assert_eq!(
            first_dependency(&[vec![0], vec![1], vec![0, 1]], 2),
            Some(vec![0, 1, 2])
        );
        // Duplicate vector.
        assert_eq!(first_dependency(&[vec![3], vec![3]], 4), Some(vec![0, 1]));
    }

    #[test]
    fn first_dependency_is_earliest() {
        // Both {0,1,2} and {3,4} are dependent subsets; the scan hits the
        // one completed by the earliest vector.
        let vs = vec![vec![0], vec![1], vec![0, 1], vec![2], vec![2]];
        assert_eq!(first_dependency(&vs, 3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn zero_columns() {
        assert_eq!(first_dependency(&[vec![]], 0), Some(vec![0]));
    }

    #[test]
    fn wide_vectors() {
        // Exercise multi-word bitsets: columns spread past 64.
        let vs = vec![vec![0, 100], vec![100, 70], vec![0, 70]];
        assert_eq!(first_dependency(&vs, 128), Some(vec![0, 1, 2]));
        let vs = vec![vec![0, 100], vec![100, 70], vec![0, 71]];
        assert_eq!(first_dependency(&vs, 128), None);
    }
}
