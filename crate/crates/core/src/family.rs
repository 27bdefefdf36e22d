//! Subsets of `[n]` and uniform families of them.
//!
//! A [`KSubset`] is stored as a `u64` bitmask (bit `e - 1` set iff `e` is a
//! member), so `n` is capped at 64. At the API boundary subsets are always
//! read and written as strictly increasing 1-based element lists.

use std::collections::BTreeSet;
use std::fmt;

use crate::binom::{layer_size, MAX_N};
use crate::error::{Error, Result};

/// Ground-set size `n` and uniform subset size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    n: u32,
    k: u32,
}

impl Params {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParams(format!(
                "ground set size must be in [1, {MAX_N}], got n = {n}"
            )));
        }
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        Ok(Params { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `l = n - k`, the size of complements.
    pub fn l(&self) -> u32 {
        self.n - self.k
    }

    /// Number of `k`-subsets of `[n]`.
    pub fn layer_size(&self) -> u64 {
        layer_size(self.n, self.k)
    }

    pub fn complement(&self) -> Params {
        Params { n: self.n, k: self.l() }
    }

    pub(crate) fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }
}

#[inline]
pub(crate) fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]` with a canonical bitmask encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: u32,
    bits: u64,
}

impl KSubset {
    /// Builds a subset from strictly increasing 1-based elements.
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParams(format!(
                "ground set size must be in [1, {MAX_N}], got n = {n}"
            )));
        }
        let mut bits = 0u64;
        let mut prev = 0u32;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if e <= prev {
                return Err(Error::NotStrictlyIncreasing);
            }
            prev = e;
            bits |= 1 << (e - 1);
        }
        Ok(KSubset { n, bits })
    }

    /// Builds a subset and checks it has exactly `params.k()` elements.
    pub fn with_params(params: Params, elements: &[u32]) -> Result<Self> {
        let s = Self::new(params.n(), elements)?;
        if s.len() != params.k() {
            return Err(Error::WrongSize { expected: params.k(), actual: s.len() });
        }
        Ok(s)
    }

    /// Builds from a raw mask. Bits above `n` are rejected.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParams(format!("n = {n} out of range")));
        }
        if bits & !full_mask(n) != 0 {
            let element = 64 - bits.leading_zeros();
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(KSubset { n, bits })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: u32, bits: u64) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        KSubset { n, bits }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.n && self.bits & (1 << (element - 1)) != 0
    }

    /// Members in increasing order.
    pub fn elements(&self) -> Vec<u32> {
        BitIter(self.bits).map(|b| b + 1).collect()
    }

    pub fn params(&self) -> Params {
        Params { n: self.n, k: self.len() }
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.bits & other.bits == 0
    }

    /// `[n] \ self`.
    pub fn complement(&self) -> KSubset {
        KSubset { n: self.n, bits: !self.bits & full_mask(self.n) }
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Iterator over the 0-based positions of set bits, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// A set of `k`-subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    params: Params,
    members: BTreeSet<KSubset>,
}

impl SetFamily {
    pub fn empty(params: Params) -> Self {
        SetFamily { params, members: BTreeSet::new() }
    }

    /// Collects members, rejecting any whose `(n, k)` differs from `params`.
    pub fn from_subsets<I>(params: Params, subsets: I) -> Result<Self>
    where
        I: IntoIterator<Item = KSubset>,
    {
        let mut family = Self::empty(params);
        for s in subsets {
            family.insert(s)?;
        }
        Ok(family)
    }

    pub(crate) fn from_masks_unchecked<I>(params: Params, masks: I) -> Self
    where
        I: IntoIterator<Item = u64>,
    {
        let members = masks
            .into_iter()
            .map(|bits| KSubset::from_bits_unchecked(params.n(), bits))
            .collect();
        SetFamily { params, members }
    }

    /// Parses `"1,2,3;2,4,5"` style literals.
    pub fn from_element_lists(params: Params, lists: &[Vec<u32>]) -> Result<Self> {
        let subsets = lists
            .iter()
            .map(|l| KSubset::with_params(params, l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_subsets(params, subsets)
    }

    /// All `k`-subsets of `[n]`.
    pub fn complete(params: Params) -> Self {
        Self::from_masks_unchecked(params, LayerIter::new(params.n(), params.k()))
    }

    pub fn insert(&mut self, s: KSubset) -> Result<bool> {
        if s.n() != self.params.n() || s.len() != self.params.k() {
            return Err(Error::ParamsMismatch {
                n1: self.params.n(),
                k1: self.params.k(),
                n2: s.n(),
                k2: s.len(),
            });
        }
        Ok(self.members.insert(s))
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &KSubset> + '_ {
        self.members.iter()
    }

    pub(crate) fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().map(|s| s.bits)
    }

    /// Elementwise complement; an `(n - k)`-uniform family of the same size.
    pub fn complement(&self) -> SetFamily {
        let full = self.params.full_mask();
        SetFamily::from_masks_unchecked(self.params.complement(), self.masks().map(|b| !b & full))
    }

    /// `{A \ {required} : A in self, required in A, forbidden not in A}`.
    pub fn restrict(&self, required: u32, forbidden: u32) -> Result<SetFamily> {
        let n = self.params.n();
        for e in [required, forbidden] {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        if required == forbidden {
            return Err(Error::InvalidParams(
                "required and forbidden elements must differ".into(),
            ));
        }
        if self.params.k() == 0 {
            return Ok(SetFamily::empty(self.params));
        }
        let req = 1u64 << (required - 1);
        let forb = 1u64 << (forbidden - 1);
        let params = Params { n, k: self.params.k() - 1 };
        Ok(SetFamily::from_masks_unchecked(
            params,
            self.masks().filter(|b| b & req != 0 && b & forb == 0).map(|b| b & !req),
        ))
    }

    /// Members as element lists, in increasing bitmask (colex) order.
    pub fn to_element_lists(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(KSubset::elements).collect()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a KSubset;
    type IntoIter = std::collections::btree_set::Iter<'a, KSubset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Complement of a single subset.
pub fn complement(s: &KSubset) -> KSubset {
    s.complement()
}

/// Complement of every member.
pub fn family_complement(f: &SetFamily) -> SetFamily {
    f.complement()
}

/// Restriction `A(ij)` with `j` required and `i` forbidden.
pub fn restrict(f: &SetFamily, required: u32, forbidden: u32) -> Result<SetFamily> {
    f.restrict(required, forbidden)
}

/// Enumerates all `k`-bit masks below `2^n` in increasing numeric order
/// (Gosper's hack).
#[derive(Debug, Clone)]
pub(crate) struct LayerIter {
    next: Option<u64>,
    limit: u64,
}

impl LayerIter {
    pub(crate) fn new(n: u32, k: u32) -> Self {
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(full_mask(k))
        };
        LayerIter { next, limit: full_mask(n) }
    }
}

impl Iterator for LayerIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                // carried past bit 63: cur was the last 64-bit mask
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= self.limit && nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(5, &[1, 2]).complement().elements(), vec![3, 4, 5]);
        assert_eq!(set(6, &[2, 4]).complement().elements(), vec![1, 3, 5, 6]);
        for k in 1..=6 {
            let first: Vec<u32> = (1..=k).collect();
            let last: Vec<u32> = (k + 1..=2 * k).collect();
            assert_eq!(set(2 * k, &first).complement().elements(), last);
        }
    }

    #[test]
    fn complement_is_involution() {
        for n in 1..=8 {
            for bits in 0..(1u64 << n) {
                let s = KSubset::from_bits(n, bits).unwrap();
                assert_eq!(s.complement().complement(), s);
            }
        }
    }

    #[test]
    fn family_complement_examples() {
        let p = Params::new(4, 2).unwrap();
        assert!(SetFamily::empty(p).complement().is_empty());
        let f = SetFamily::from_element_lists(p, &[vec![1, 2]]).unwrap();
        assert_eq!(f.complement().to_element_lists(), vec![vec![3, 4]]);
        let all = SetFamily::complete(p);
        assert_eq!(all.complement(), all);
    }

    #[test]
    fn restrict_examples() {
        let p = Params::new(4, 2).unwrap();
        let f = SetFamily::from_element_lists(p, &[vec![1, 3], vec![2, 3], vec![1, 2]]).unwrap();
        let r = f.restrict(3, 2).unwrap();
        assert_eq!(r.params().k(), 1);
        assert_eq!(r.to_element_lists(), vec![vec![1]]);

        assert!(SetFamily::empty(p).restrict(1, 2).unwrap().is_empty());

        let p3 = Params::new(5, 3).unwrap();
        let sup12 = SetFamily::from_element_lists(p3, &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]])
            .unwrap();
        assert!(sup12.restrict(1, 2).unwrap().is_empty());
    }

    #[test]
    fn restrict_shrinks_and_avoids() {
        let p = Params::new(7, 3).unwrap();
        let all = SetFamily::complete(p);
        for i in 1..=7 {
            for j in 1..=7 {
                if i == j {
                    assert!(all.restrict(j, i).is_err());
                    continue;
                }
                let r = all.restrict(j, i).unwrap();
                assert!(r.len() <= all.len());
                assert_eq!(r.len() as u64, layer_size(5, 2));
                for s in &r {
                    assert_eq!(s.len(), 2);
                    assert!(!s.contains(i) && !s.contains(j));
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(KSubset::new(5, &[7]), Err(Error::ElementOutOfRange { element: 7, n: 5 }));
        assert_eq!(KSubset::new(5, &[3, 2]), Err(Error::NotStrictlyIncreasing));
        assert_eq!(KSubset::new(5, &[2, 2]), Err(Error::NotStrictlyIncreasing));
        assert!(Params::new(3, 4).is_err());
        assert!(Params::new(65, 1).is_err());
        let p = Params::new(5, 2).unwrap();
        assert_eq!(
            KSubset::with_params(p, &[1, 2, 3]),
            Err(Error::WrongSize { expected: 2, actual: 3 })
        );
        let mut f = SetFamily::empty(p);
        assert!(f.insert(set(6, &[1, 2])).is_err());
        assert!(f.insert(set(5, &[1, 2])).unwrap());
        assert!(!f.insert(set(5, &[1, 2])).unwrap());
    }

    #[test]
    fn layer_iter_counts_and_order() {
        for n in 0..=10u32 {
            for k in 0..=n + 1 {
                let v: Vec<u64> = LayerIter::new(n, k).collect();
                assert_eq!(v.len() as u64, if n == 0 { (k == 0) as u64 } else { layer_size(n, k) });
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|m| m.count_ones() == k && *m <= full_mask(n)));
            }
        }
        assert_eq!(LayerIter::new(64, 63).count(), 64);
        assert_eq!(LayerIter::new(64, 64).count(), 1);
    }
}
