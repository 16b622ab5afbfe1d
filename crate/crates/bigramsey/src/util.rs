//! Small combinatorial helpers shared by the enumerators.

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

/// Visits all `n`-element subsets of `0..size` in lexicographic order.
pub fn for_each_subset(size: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if n > size {
        return;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + size - n {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of `n`-element subsets of `0..size`, saturating at `u64::MAX`.
pub fn binomial(size: u64, n: u64) -> u64 {
    if n > size {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..n.min(size - n) {
        acc = acc * (size - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn subsets_enumerate_choose() {
        let mut c = 0;
        for_each_subset(6, 3, |s| {
            assert_eq!(s.len(), 3);
            c += 1;
        });
        assert_eq!(c, 20);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(512, 3), 22238720);
    }

    #[test]
    fn empty_subset_once() {
        let mut c = 0;
        for_each_subset(4, 0, |_| c += 1);
        assert_eq!(c, 1);
    }
}
