//! Small permutation and shuffle helpers shared by the cell and simplicial code.

/// Sign of the permutation carrying `source` to `target`, both listing the same
/// distinct items. `target[k] = source[pi(k)]`; the sign of `pi` is returned.
pub fn rearrangement_sign<T: PartialEq>(source: &[T], target: &[T]) -> i32 {
    debug_assert_eq!(source.len(), target.len());
    let positions: Vec<usize> = target
        .iter()
        .map(|t| source.iter().position(|s| s == t).expect("item missing from source"))
        .collect();
    sign_of_sequence(&positions)
}

/// Sign of a sequence of distinct integers read as a permutation (parity of inversions).
pub fn sign_of_sequence(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All interleavings of the given blocks that preserve the internal order of each block.
pub fn shuffles<T: Clone>(blocks: &[Vec<T>]) -> Vec<Vec<T>> {
    let total: usize = blocks.iter().map(Vec::len).sum();
    let mut out = Vec::new();
    let mut cursor = vec![0usize; blocks.len()];
    let mut current = Vec::with_capacity(total);
    shuffle_rec(blocks, &mut cursor, &mut current, total, &mut out);
    out
}

fn shuffle_rec<T: Clone>(
    blocks: &[Vec<T>],
    cursor: &mut [usize],
    current: &mut Vec<T>,
    total: usize,
    out: &mut Vec<Vec<T>>,
) {
    if current.len() == total {
        out.push(current.clone());
        return;
    }
    for b in 0..blocks.len() {
        if cursor[b] < blocks[b].len() {
            current.push(blocks[b][cursor[b]].clone());
            cursor[b] += 1;
            shuffle_rec(blocks, cursor, current, total, out);
            cursor[b] -= 1;
            current.pop();
        }
    }
}

/// Weakly increasing maps from `count` ordered items into `bins` ordered bins,
/// returned as the bin index of each item.
pub fn monotone_assignments(count: usize, bins: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if bins == 0 {
        if count == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(count);
    monotone_rec(count, bins, 0, &mut current, &mut out);
    out
}

fn monotone_rec(count: usize, bins: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == count {
        out.push(current.clone());
        return;
    }
    for b in min..bins {
        current.push(b);
        monotone_rec(count, bins, b, current, out);
        current.pop();
    }
}

/// Rising factorial `a (a+1) ... (a+k-1)`, with the empty product equal to 1.
pub fn rising_factorial(a: u128, k: u32) -> u128 {
    (0..k as u128).map(|i| a + i).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts_are_binomial() {
        let s = shuffles(&[vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(s.len(), 10);
        assert!(s.contains(&vec![3, 1, 4, 2, 5]));
    }

    #[test]
    fn signs() {
        assert_eq!(rearrangement_sign(&[1, 2, 3], &[1, 2, 3]), 1);
        assert_eq!(rearrangement_sign(&[1, 2, 3], &[2, 1, 3]), -1);
        assert_eq!(rearrangement_sign(&[1, 2, 3], &[3, 1, 2]), 1);
    }

    #[test]
    fn monotone_counts() {
        // C(count + bins - 1, count)
        assert_eq!(monotone_assignments(2, 4).len(), 10);
        assert_eq!(monotone_assignments(0, 3).len(), 1);
        assert_eq!(monotone_assignments(2, 0).len(), 0);
    }

    #[test]
    fn rising() {
        assert_eq!(rising_factorial(2, 2), 6);
        assert_eq!(rising_factorial(4, 3), 120);
        assert_eq!(rising_factorial(0, 0), 1);
        assert_eq!(rising_factorial(0, 2), 0);
    }
}
