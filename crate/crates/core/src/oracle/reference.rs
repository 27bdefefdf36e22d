//! Brute-force primitives for the verifiers.
//!
//! Nothing here goes through the bitmask rank arithmetic, the cascade, or the
//! shadow criterion; orders come from sorting by the set-difference
//! definitions and compatibility from pairwise disjointness tests.

use std::cmp::Ordering;

use crate::orders::OrderKind;

/// `F < G` per the set-difference definitions:
/// lex `min F\G < min G\F`, colex `max F\G < max G\F`,
/// reversed colex `min F\G > min G\F`.
pub fn compare_by_definition(f: &[u32], g: &[u32], order: OrderKind) -> Ordering {
    let f_only: Vec<u32> = f.iter().copied().filter(|x| !g.contains(x)).collect();
    let g_only: Vec<u32> = g.iter().copied().filter(|x| !f.contains(x)).collect();
    if f_only.is_empty() && g_only.is_empty() {
        return Ordering::Equal;
    }
    let (fo, go) = (f_only.iter(), g_only.iter());
    match order {
        OrderKind::Lex => fo.min().cmp(&go.min()),
        OrderKind::Colex => fo.max().cmp(&go.max()),
        OrderKind::RevColex => go.min().cmp(&fo.min()),
    }
}

/// Every `k`-subset of `[n]` as an increasing element list.
pub fn all_subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for e in start..=n {
            cur.push(e);
            go(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// The `k`-subsets of `[n]` sorted under `order`.
pub fn sorted_layer(n: u32, k: u32, order: OrderKind) -> Vec<Vec<u32>> {
    let mut v = all_subsets(n, k);
    v.sort_by(|a, b| compare_by_definition(a, b, order));
    v
}

pub fn to_mask(elements: &[u32]) -> u64 {
    elements.iter().fold(0, |m, &e| m | (1 << (e - 1)))
}

pub fn sorted_layer_masks(n: u32, k: u32, order: OrderKind) -> Vec<u64> {
    sorted_layer(n, k, order).iter().map(|s| to_mask(s)).collect()
}

/// `f(a)` for every `0 <= a <= C(n,k)`: the largest `b` with `L(a)`, `L(b)`
/// cross-intersecting, by pairwise disjointness checks.
pub fn compat_table_brute(n: u32, k: u32) -> Vec<u64> {
    let lex = sorted_layer_masks(n, k, OrderKind::Lex);
    let total = lex.len();
    // first_conflict[y]: smallest x with lex[x] ∩ lex[y] = ∅
    let first_conflict: Vec<usize> = lex
        .iter()
        .map(|&y| lex.iter().position(|&x| x & y == 0).unwrap_or(usize::MAX))
        .collect();
    (0..=total)
        .map(|a| {
            first_conflict
                .iter()
                .position(|&x| x < a)
                .unwrap_or(total) as u64
        })
        .collect()
}

pub fn max_compatible_b_brute(n: u32, k: u32, a: u64) -> u64 {
    compat_table_brute(n, k)[a as usize]
}

/// Fixed-width bitset over the sets of one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits(pub Vec<u64>);

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn count(&self) -> u64 {
        self.0.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// For each set in `upper`, the indices of the members of `lower` it contains.
pub fn containment_table(upper: &[u64], lower: &[u64]) -> Vec<Bits> {
    upper
        .iter()
        .map(|&u| {
            let mut b = Bits::zeros(lower.len());
            for (i, &l) in lower.iter().enumerate() {
                if l & u == l {
                    b.set(i);
                }
            }
            b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let lex = sorted_layer(5, 2, OrderKind::Lex);
        assert_eq!(lex[0], vec![1, 2]);
        assert_eq!(lex[4], vec![2, 3]);
        assert_eq!(lex[9], vec![4, 5]);
        let colex = sorted_layer(5, 2, OrderKind::Colex);
        assert_eq!(&colex[..4], &[vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4]]);
        let rc = sorted_layer(5, 2, OrderKind::RevColex);
        assert_eq!(rc[0], vec![4, 5]);
        assert_eq!(rc[9], vec![1, 2]);
    }

    #[test]
    fn brute_compat_examples() {
        let f = compat_table_brute(6, 3);
        assert_eq!(f[10], 10);
        assert_eq!(f[7], 13);
        assert_eq!(f[9], 11);
        assert_eq!(f[0], 20);
    }
}
