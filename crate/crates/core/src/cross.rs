//! Cross-intersecting pairs of families: predicates, lex compression, the
//! closed-form product and sum bounds, the extremal construction, and the
//! disjointness graphs with their matchings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binom::{add, binom, layer_size, mul, sub};
use crate::error::{Error, Result};
use crate::family::{full_mask, KSubset, LayerIter, Params, SetFamily};
use crate::matching::BipartiteGraph;
use crate::orders::{OrderKind, SegmentSpec};
use crate::shadows::{kk_min_shadow_cascade, ShadowQuery};

fn c(m: i64, b: i64) -> Result<u128> {
    binom(m, b)
}

fn require_ground(a: &SetFamily, b: &SetFamily) -> Result<()> {
    let (l, r) = (a.params().n(), b.params().n());
    if l != r {
        return Err(Error::GroundSetMismatch { left: l, right: r });
    }
    Ok(())
}

fn require_n_ge_2k(n: u32, k: u32) -> Result<()> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParams(format!("need n >= 2k > 0, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `n = 2k`, where the cross-intersecting and cross-union conditions coincide.
pub fn is_boundary(n: u32, k: u32) -> bool {
    n == 2 * k
}

/// Every `A` in `a` meets every `B` in `b`. The two families may have
/// different uniformities but must share the ground set.
pub fn is_cross_intersecting(a: &SetFamily, b: &SetFamily) -> Result<bool> {
    require_ground(a, b)?;
    Ok(a.iter().all(|x| b.iter().all(|y| !x.is_disjoint(y))))
}

/// No `C` in `c` and `D` in `d` with `C ∪ D = [n]`.
pub fn is_cross_union(c: &SetFamily, d: &SetFamily) -> Result<bool> {
    require_ground(c, d)?;
    let full = c.params().full_mask();
    Ok(c.masks().all(|x| d.masks().all(|y| x | y != full)))
}

/// Replaces a cross-intersecting pair by the lex initial segments of the same
/// sizes.
pub fn hilton_compress(a: &SetFamily, b: &SetFamily) -> Result<(SegmentSpec, SegmentSpec)> {
    if !is_cross_intersecting(a, b)? {
        return Err(Error::NotCrossIntersecting);
    }
    Ok((
        SegmentSpec::new(OrderKind::Lex, a.params(), a.len() as u64)?,
        SegmentSpec::new(OrderKind::Lex, b.params(), b.len() as u64)?,
    ))
}

/// Size of the `k`-shadow of the complements of `L^(k)(b)`.
///
/// The complements form a reversed-colex initial segment of `(n-k)`-sets, so
/// their `k`-shadow is a reversed-colex initial segment of `k`-sets, i.e. the
/// last `σ(b)` sets in lex order, with `σ(b)` the Kruskal–Katona minimum.
fn complement_shadow_size(params: Params, b: u64) -> u64 {
    let q = ShadowQuery { params: params.complement(), t: params.k(), m: b };
    kk_min_shadow_cascade(&q)
}

/// Whether `L^(k)(a)` and `L^(k)(b)` are cross-intersecting: the first `a`
/// lex sets must avoid the last `σ(b)`.
pub fn segments_cross_intersect(n: u32, k: u32, a: u64, b: u64) -> Result<bool> {
    require_n_ge_2k(n, k)?;
    let params = Params::new(n, k)?;
    let total = params.layer_size();
    for size in [a, b] {
        if size > total {
            return Err(Error::SegmentOutOfRange { m: size, n, k, total });
        }
    }
    Ok(a + complement_shadow_size(params, b) <= total)
}

/// Largest `b` such that `L^(k)(a_size)` and `L^(k)(b)` are cross-intersecting.
pub fn max_compatible_b(n: u32, k: u32, a_size: u64) -> Result<u64> {
    require_n_ge_2k(n, k)?;
    let params = Params::new(n, k)?;
    let total = params.layer_size();
    if a_size > total {
        return Err(Error::SegmentOutOfRange { m: a_size, n, k, total });
    }
    let room = total - a_size;
    // σ is nondecreasing and σ(0) = 0: find the last b with σ(b) <= room
    let (mut lo, mut hi) = (0u64, total);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if complement_shadow_size(params, mid) <= room {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// The pair `(A_i, B_i)`: `A_i` holds the sets containing 1 that meet
/// `[2, i]`; `B_i` holds the sets containing 1 together with those that
/// avoid 1 but contain `[2, i]`.
#[derive(Debug, Clone)]
pub struct ExtremalPair {
    pub i: u32,
    pub a_family: SetFamily,
    pub b_family: SetFamily,
    pub a_size: u128,
    pub b_size: u128,
    /// Built at `n = 2k` rather than `n > 2k`.
    pub boundary: bool,
}

/// Closed forms `(C(n-1,k-1) - C(n-i,k-1), C(n-1,k-1) + C(n-i,k-i+1))`.
pub fn extremal_sizes(n: u32, k: u32, i: u32) -> Result<(u128, u128)> {
    let (n, k, i) = (n as i64, k as i64, i as i64);
    let star = c(n - 1, k - 1)?;
    Ok((sub(star, c(n - i, k - 1)?, "extremal size")?, add(star, c(n - i, k - i + 1)?, "extremal size")?))
}

pub fn build_extremal_pair(n: u32, k: u32, i: u32) -> Result<ExtremalPair> {
    require_n_ge_2k(n, k)?;
    if i < 2 || i > k + 1 {
        return Err(Error::InvalidParams(format!("need 2 <= i <= k + 1, got i = {i}, k = {k}")));
    }
    let params = Params::new(n, k)?;
    let one = 1u64;
    let interval = full_mask(i) & !one; // elements 2..=i
    let a_family = SetFamily::from_masks_unchecked(
        params,
        LayerIter::new(n, k).filter(|&s| s & one != 0 && s & interval != 0),
    );
    let b_family = SetFamily::from_masks_unchecked(
        params,
        LayerIter::new(n, k).filter(|&s| s & one != 0 || s & interval == interval),
    );
    Ok(ExtremalPair {
        i,
        a_size: a_family.len() as u128,
        b_size: b_family.len() as u128,
        a_family,
        b_family,
        boundary: is_boundary(n, k),
    })
}

/// `C(n-1, k-1)^2`.
pub fn pyber_bound(n: u32, k: u32) -> Result<u128> {
    require_n_ge_2k(n, k)?;
    let star = c(n as i64 - 1, k as i64 - 1)?;
    mul(star, star, "pyber bound")
}

/// `(C(n-1,k-1) + 1)(C(n-1,k-1) - C(n-k-1,k-1))`.
///
/// Accepts `n = 2k`, where it coincides with [`thm2_bound`] at `i = k + 1`;
/// callers can flag that case with [`is_boundary`].
pub fn thm1_bound(n: u32, k: u32) -> Result<u128> {
    require_n_ge_2k(n, k)?;
    let (n, k) = (n as i64, k as i64);
    let star = c(n - 1, k - 1)?;
    let cap = sub(star, c(n - k - 1, k - 1)?, "thm1 bound")?;
    mul(star + 1, cap, "thm1 bound")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thm2Bound {
    /// `C(n-1,k-1) + C(n-i,k-i+1)`, the size `|B|` must reach.
    pub b_threshold: u128,
    pub product_bound: u128,
}

pub fn thm2_bound(n: u32, k: u32, i: u32) -> Result<Thm2Bound> {
    require_n_ge_2k(n, k)?;
    if i < 3 || i > k + 1 {
        return Err(Error::InvalidParams(format!("need 3 <= i <= k + 1, got i = {i}, k = {k}")));
    }
    let (a_cap, b_threshold) = extremal_sizes(n, k, i)?;
    Ok(Thm2Bound { b_threshold, product_bound: mul(b_threshold, a_cap, "thm2 bound")? })
}

/// `2 C(n-1, k-1)`.
pub fn prop1_sum_bound(n: u32, k: u32) -> Result<u128> {
    require_n_ge_2k(n, k)?;
    mul(2, c(n as i64 - 1, k as i64 - 1)?, "sum bound")
}

/// `C(m,a) + C(m-j,a-j) - C(m-j,a)`.
pub fn lemma7_bound(m: u32, a: u32, j: u32) -> Result<u128> {
    if a == 0 || m < 2 * a || j == 0 {
        return Err(Error::InvalidParams(format!(
            "need m >= 2a > 0 and j >= 1, got m = {m}, a = {a}, j = {j}"
        )));
    }
    let (m, a, j) = (m as i64, a as i64, j as i64);
    sub(add(c(m, a)?, c(m - j, a - j)?, "lemma bound")?, c(m - j, a)?, "lemma bound")
}

/// Disjointness graph between `X_1` and `X_2`, where `X_i` holds the
/// `k`-sets meeting `{1, 2}` in exactly `{i}`.
pub fn build_prop1_graph(n: u32, k: u32) -> Result<BipartiteGraph> {
    require_n_ge_2k(n, k)?;
    let side = |own: u64| -> Vec<KSubset> {
        LayerIter::new(n, k)
            .filter(|&s| s & 0b11 == own)
            .map(|s| KSubset::from_bits_unchecked(n, s))
            .collect()
    };
    Ok(BipartiteGraph::disjointness(side(0b01), side(0b10)))
}

#[derive(Debug, Clone)]
pub struct Lemma7Block {
    pub s: u32,
    pub p: SetFamily,
    pub q: SetFamily,
}

/// `A_0 = P_1 ⊔ ... ⊔ P_{j-1}` and `B_0 = Q_1 ⊔ ... ⊔ Q_{j-1}` over `[m]`.
#[derive(Debug, Clone)]
pub struct Lemma7Decomposition {
    pub m: u32,
    pub a: u32,
    pub j: u32,
    /// Sets containing 1 but not all of `[1, j]`.
    pub a0: SetFamily,
    /// Sets avoiding 1 and meeting `[2, j]`.
    pub b0: SetFamily,
    pub blocks: Vec<Lemma7Block>,
}

pub fn build_lemma7_decomposition(m: u32, a: u32, j: u32) -> Result<Lemma7Decomposition> {
    if a == 0 || m < 2 * a || j < 2 || j > m {
        return Err(Error::InvalidParams(format!(
            "need m >= 2a > 0 and 2 <= j <= m, got m = {m}, a = {a}, j = {j}"
        )));
    }
    let params = Params::new(m, a)?;
    let one = 1u64;
    let head = full_mask(j); // [1, j]
    let tail = head & !one; // [2, j]
    let a0: Vec<u64> = LayerIter::new(m, a)
        .filter(|&s| s & one != 0 && s & head != head)
        .collect();
    let b0: Vec<u64> = LayerIter::new(m, a)
        .filter(|&s| s & one == 0 && s & tail != 0)
        .collect();
    let blocks = (1..j)
        .map(|s| {
            let between = full_mask(s) & !one; // [2, s]
            let next = 1u64 << s; // element s + 1
            let p = a0.iter().copied().filter(|&x| x & between == between && x & next == 0);
            let q = b0.iter().copied().filter(|&x| x & between == 0 && x & next != 0);
            Lemma7Block {
                s,
                p: SetFamily::from_masks_unchecked(params, p),
                q: SetFamily::from_masks_unchecked(params, q),
            }
        })
        .collect();
    Ok(Lemma7Decomposition {
        m,
        a,
        j,
        a0: SetFamily::from_masks_unchecked(params, a0),
        b0: SetFamily::from_masks_unchecked(params, b0),
        blocks,
    })
}

/// A matching of the disjointness graph between `p` and `q` that covers
/// every member of `p`.
pub fn find_block_matching(p: &SetFamily, q: &SetFamily) -> Result<Vec<(KSubset, KSubset)>> {
    require_ground(p, q)?;
    let graph = BipartiteGraph::disjointness(p.iter().copied().collect(), q.iter().copied().collect());
    let matching = graph.maximum_matching();
    if matching.len() < p.len() {
        return Err(Error::NoSaturatingMatching { found: matching.len(), needed: p.len() });
    }
    Ok(matching.into_iter().map(|(i, j)| (graph.left[i], graph.right[j])).collect())
}

/// Union of the block matchings; a matching of `A_0` into `B_0`.
pub fn lemma7_matching(d: &Lemma7Decomposition) -> Result<Vec<(KSubset, KSubset)>> {
    let mut all = Vec::new();
    for block in &d.blocks {
        all.extend(find_block_matching(&block.p, &block.q)?);
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Less,
    LessOrEqual,
    Equal,
    GreaterOrEqual,
}

impl Relation {
    pub fn holds(&self, lhs: u128, rhs: u128) -> bool {
        match self {
            Relation::Less => lhs < rhs,
            Relation::LessOrEqual => lhs <= rhs,
            Relation::Equal => lhs == rhs,
            Relation::GreaterOrEqual => lhs >= rhs,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessOrEqual => "<=",
            Relation::Equal => "=",
            Relation::GreaterOrEqual => ">=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportVerdict {
    Holds,
    Attained,
    Fails,
}

impl fmt::Display for ReportVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportVerdict::Holds => "holds",
            ReportVerdict::Attained => "attained",
            ReportVerdict::Fails => "fails",
        })
    }
}

/// An evaluated bound: `observed relation bound_value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub parameters: BTreeMap<String, i64>,
    #[serde(with = "crate::exact")]
    pub bound_value: u128,
    #[serde(with = "crate::exact::option")]
    pub observed: Option<u128>,
    pub relation: Relation,
    #[serde(with = "crate::exact::pairs")]
    pub attained_at: Vec<(u128, u128)>,
    pub verdict: ReportVerdict,
    pub boundary: bool,
}

impl BoundReport {
    pub fn inequality(
        name: &str,
        parameters: &[(&str, i64)],
        lhs: u128,
        relation: Relation,
        rhs: u128,
        boundary: bool,
    ) -> Self {
        let verdict = if !relation.holds(lhs, rhs) {
            ReportVerdict::Fails
        } else if lhs == rhs {
            ReportVerdict::Attained
        } else {
            ReportVerdict::Holds
        };
        BoundReport {
            bound_name: name.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            bound_value: rhs,
            observed: Some(lhs),
            relation,
            attained_at: Vec::new(),
            verdict,
            boundary,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != ReportVerdict::Fails
    }

    pub fn parameter(&self, name: &str) -> Option<i64> {
        self.parameters.get(name).copied()
    }
}

/// Exact checks of the auxiliary binomial inequalities used to bound the
/// product in each size regime of `|A|`, with `l = n - k`.
///
/// Rows: `star_ratio` for `2 <= i <= k`; `shifted_product` (k >= 2); `ratio_in_x` for
/// `l - 2 <= x <= n - 3`; the two `tail_product` rows and their bracketed sum
/// (k >= 2); `log_concavity` of `C(n-1, b)` for `1 <= b <= n - 2`.
pub fn check_proof_inequalities(n: u32, k: u32) -> Result<Vec<BoundReport>> {
    require_n_ge_2k(n, k)?;
    let boundary = is_boundary(n, k);
    let (ni, ki) = (n as i64, k as i64);
    let l = ni - ki;
    let mut out = Vec::new();
    let prod = |a: u128, b: u128| mul(a, b, "proof inequality");

    for i in 2..=ki {
        let lhs = prod(c(ni - i, ki - i)?, c(ni, ki)?)?;
        let rhs = prod(c(ni - i + 1, ki - i + 1)?, c(ni - 1, ki - 1)?)?;
        out.push(BoundReport::inequality(
            "star_ratio",
            &[("n", ni), ("k", ki), ("i", i)],
            lhs,
            Relation::Less,
            rhs,
            boundary,
        ));
    }

    if k >= 2 {
        // C(n-2,l) C(n-2,l-1) < C(n-1,l) C(n-3,l-1)
        let lhs = prod(c(ni - 2, l)?, c(ni - 2, l - 1)?)?;
        let rhs = prod(c(ni - 1, l)?, c(ni - 3, l - 1)?)?;
        out.push(BoundReport::inequality(
            "shifted_product",
            &[("n", ni), ("k", ki), ("l", l)],
            lhs,
            Relation::Less,
            rhs,
            boundary,
        ));
    }

    for x in (l - 2).max(0)..=ni - 3 {
        let lhs = prod(c(x, l - 2)?, c(ni - 2, l)?)?;
        let rhs = prod(c(x, ni - l - 2)?, c(ni - 1, l)?)?;
        out.push(BoundReport::inequality(
            "ratio_in_x",
            &[("n", ni), ("k", ki), ("l", l), ("x", x)],
            lhs,
            Relation::LessOrEqual,
            rhs,
            boundary,
        ));
    }

    if k >= 2 {
        let lhs = prod(c(ni - 4, l - 1)?, c(ni - 1, l)?)?;
        let rhs = prod(c(ni - 3, l - 1)?, c(ni - 2, l)?)?;
        out.push(BoundReport::inequality(
            "tail_product_a",
            &[("n", ni), ("k", ki), ("l", l)],
            lhs,
            Relation::LessOrEqual,
            rhs,
            boundary,
        ));
        let lhs = prod(c(ni - 4, l - 1)?, c(ni - 2, l - 1)?)?;
        let rhs = prod(c(ni - 3, l - 1)?, c(ni - 3, l - 1)?)?;
        out.push(BoundReport::inequality(
            "tail_product_b",
            &[("n", ni), ("k", ki), ("l", l)],
            lhs,
            Relation::LessOrEqual,
            rhs,
            boundary,
        ));
        let lhs = prod(
            add(c(ni - 2, l)?, c(ni - 4, l - 1)?, "bracket")?,
            add(c(ni - 1, l)?, c(ni - 2, l - 1)?, "bracket")?,
        )?;
        let rhs = prod(
            add(c(ni - 1, l)?, c(ni - 3, l - 1)?, "bracket")?,
            add(c(ni - 2, l)?, c(ni - 3, l - 1)?, "bracket")?,
        )?;
        out.push(BoundReport::inequality(
            "tail_bracket",
            &[("n", ni), ("k", ki), ("l", l)],
            lhs,
            Relation::LessOrEqual,
            rhs,
            boundary,
        ));
    }

    let m = ni - 1;
    for b in 1..m {
        let mid = c(m, b)?;
        out.push(BoundReport::inequality(
            "log_concavity",
            &[("n", ni), ("k", ki), ("m", m), ("b", b)],
            prod(mid, mid)?,
            Relation::GreaterOrEqual,
            prod(c(m - 1, b)?, c(m + 1, b)?)?,
            boundary,
        ));
    }

    Ok(out)
}

/// Degree every vertex of the `X_1`/`X_2` graph has: `C(n-k-1, k-1)`.
pub fn prop1_degree(n: u32, k: u32) -> u64 {
    layer_size(n - k - 1, k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, k: u32, lists: &[&[u32]]) -> SetFamily {
        let p = Params::new(n, k).unwrap();
        let v: Vec<Vec<u32>> = lists.iter().map(|l| l.to_vec()).collect();
        SetFamily::from_element_lists(p, &v).unwrap()
    }

    fn star(n: u32, k: u32) -> SetFamily {
        let p = Params::new(n, k).unwrap();
        SetFamily::from_masks_unchecked(p, LayerIter::new(n, k).filter(|s| s & 1 != 0))
    }

    #[test]
    fn cross_intersecting_examples() {
        let s = star(6, 3);
        assert!(is_cross_intersecting(&s, &s).unwrap());
        assert!(!is_cross_intersecting(&fam(6, 2, &[&[1, 2]]), &fam(6, 2, &[&[3, 4]])).unwrap());
        let pair = build_extremal_pair(6, 3, 3).unwrap();
        assert_eq!((pair.a_family.len(), pair.b_family.len()), (7, 13));
        assert!(is_cross_intersecting(&pair.a_family, &pair.b_family).unwrap());
        assert!(matches!(
            is_cross_intersecting(&star(6, 3), &star(7, 3)),
            Err(Error::GroundSetMismatch { .. })
        ));
        // mixed uniformity is allowed
        assert!(is_cross_intersecting(&star(6, 2), &star(6, 4)).unwrap());
    }

    #[test]
    fn cross_union_examples() {
        let p = Params::new(6, 3).unwrap();
        let low = SetFamily::from_masks_unchecked(p, LayerIter::new(5, 3));
        assert!(is_cross_union(&low, &low).unwrap());
        assert!(!is_cross_union(&fam(6, 3, &[&[1, 2, 3]]), &fam(6, 3, &[&[4, 5, 6]])).unwrap());
        let pair = build_extremal_pair(6, 3, 3).unwrap();
        assert!(is_cross_union(&pair.a_family.complement(), &pair.b_family.complement()).unwrap());
    }

    #[test]
    fn hilton_examples() {
        let pair = build_extremal_pair(6, 3, 3).unwrap();
        let (sa, sb) = hilton_compress(&pair.a_family, &pair.b_family).unwrap();
        assert_eq!((sa.size(), sb.size()), (7, 13));
        assert!(is_cross_intersecting(&sa.materialize(), &sb.materialize()).unwrap());
        // the extremal pair is already a pair of lex segments
        assert_eq!(sa.materialize(), pair.a_family);
        assert_eq!(sb.materialize(), pair.b_family);

        let p = Params::new(6, 3).unwrap();
        let (e, all) = hilton_compress(&SetFamily::empty(p), &SetFamily::complete(p)).unwrap();
        assert_eq!((e.size(), all.size()), (0, 20));

        let s = star(6, 3);
        let (x, y) = hilton_compress(&s, &s).unwrap();
        assert_eq!((x.size(), y.size()), (10, 10));

        assert_eq!(
            hilton_compress(&fam(6, 2, &[&[1, 2]]), &fam(6, 2, &[&[3, 4]])).unwrap_err(),
            Error::NotCrossIntersecting
        );
    }

    #[test]
    fn max_compatible_b_examples() {
        assert_eq!(max_compatible_b(6, 3, 10).unwrap(), 10);
        assert_eq!(max_compatible_b(6, 3, 7).unwrap(), 13);
        assert_eq!(max_compatible_b(6, 3, 9).unwrap(), 11);
        assert_eq!(max_compatible_b(6, 3, 0).unwrap(), 20);
        assert!(max_compatible_b(6, 3, 21).is_err());
        assert!(max_compatible_b(5, 3, 1).is_err());
    }

    #[test]
    fn extremal_pair_sizes() {
        assert_eq!(extremal_sizes(6, 3, 3).unwrap(), (7, 13));
        assert_eq!(extremal_sizes(6, 3, 4).unwrap(), (9, 11));
        assert_eq!(extremal_sizes(8, 3, 2).unwrap(), (6, 36));
        let p = build_extremal_pair(6, 3, 4).unwrap();
        assert_eq!((p.a_size, p.b_size), (9, 11));
        assert!(p.boundary);
        let p = build_extremal_pair(8, 3, 2).unwrap();
        assert_eq!((p.a_size, p.b_size), (6, 36));
        assert!(!p.boundary);
        assert!(p.a_family.iter().all(|s| s.contains(1) && s.contains(2)));
        assert!(build_extremal_pair(6, 3, 1).is_err());
        assert!(build_extremal_pair(6, 3, 5).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(pyber_bound(6, 3).unwrap(), 100);
        assert_eq!(pyber_bound(4, 2).unwrap(), 9);
        assert_eq!(pyber_bound(2, 1).unwrap(), 1);
        assert!(pyber_bound(5, 3).is_err());

        assert_eq!(thm1_bound(6, 3).unwrap(), 99);
        assert_eq!(thm1_bound(5, 2).unwrap(), 10);
        assert_eq!(thm1_bound(7, 3).unwrap(), 192);

        assert_eq!(thm2_bound(6, 3, 3).unwrap(), Thm2Bound { b_threshold: 13, product_bound: 91 });
        assert_eq!(thm2_bound(6, 3, 4).unwrap(), Thm2Bound { b_threshold: 11, product_bound: 99 });
        assert_eq!(thm2_bound(8, 4, 3).unwrap(), Thm2Bound { b_threshold: 45, product_bound: 1125 });
        assert!(thm2_bound(6, 3, 2).is_err());
        assert!(thm2_bound(6, 3, 5).is_err());

        assert_eq!(prop1_sum_bound(6, 3).unwrap(), 20);
        assert_eq!(prop1_sum_bound(4, 2).unwrap(), 6);
        assert_eq!(prop1_sum_bound(2, 1).unwrap(), 2);

        assert_eq!(lemma7_bound(4, 2, 1).unwrap(), 6);
        assert_eq!(lemma7_bound(6, 3, 2).unwrap(), 20);
        assert_eq!(lemma7_bound(6, 2, 2).unwrap(), 10);
        assert_eq!(lemma7_bound(8, 3, 2).unwrap(), 42);
        assert!(lemma7_bound(5, 3, 1).is_err());
        assert!(lemma7_bound(6, 3, 0).is_err());
    }

    #[test]
    fn prop1_graph_examples() {
        for (n, k, side, deg) in [(6, 3, 6, 1), (5, 2, 3, 2), (4, 2, 2, 1)] {
            let g = build_prop1_graph(n, k).unwrap();
            assert_eq!((g.left.len(), g.right.len()), (side, side));
            assert_eq!(g.regular_degree(), Some(deg));
            assert_eq!(prop1_degree(n, k), deg as u64);
            assert!(g.is_consistent());
        }
    }

    #[test]
    fn lemma7_decomposition_examples() {
        let d = build_lemma7_decomposition(6, 2, 2).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!((d.blocks[0].p.len(), d.blocks[0].q.len()), (4, 4));
        assert_eq!((d.a0.len(), d.b0.len()), (4, 4));
        let m = find_block_matching(&d.blocks[0].p, &d.blocks[0].q).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|(x, y)| x.is_disjoint(y)));

        let d = build_lemma7_decomposition(8, 3, 3).unwrap();
        let sizes: Vec<_> = d.blocks.iter().map(|b| (b.s, b.p.len(), b.q.len())).collect();
        assert_eq!(sizes, vec![(1, 15, 15), (2, 5, 10)]);
        let m = find_block_matching(&d.blocks[1].p, &d.blocks[1].q).unwrap();
        assert_eq!(m.len(), 5);

        let p = Params::new(6, 2).unwrap();
        assert!(find_block_matching(&SetFamily::empty(p), &d.blocks[0].q).is_err()); // n differs
        assert!(find_block_matching(&SetFamily::empty(p), &SetFamily::complete(p)).unwrap().is_empty());

        assert!(build_lemma7_decomposition(6, 2, 1).is_err());
        assert!(build_lemma7_decomposition(5, 3, 2).is_err());
    }

    #[test]
    fn lemma7_blocks_partition() {
        for m in 2..=10 {
            for a in 1..=m / 2 {
                for j in 2..=a.max(2).min(m) {
                    let d = build_lemma7_decomposition(m, a, j).unwrap();
                    let p_total: usize = d.blocks.iter().map(|b| b.p.len()).sum();
                    let q_total: usize = d.blocks.iter().map(|b| b.q.len()).sum();
                    assert_eq!(p_total, d.a0.len());
                    assert_eq!(q_total, d.b0.len());
                    for b in &d.blocks {
                        let (mi, ai, si) = (m as i64, a as i64, b.s as i64);
                        assert_eq!(b.p.len() as u128, binom(mi - si - 1, ai - si).unwrap());
                        assert_eq!(b.q.len() as u128, binom(mi - si - 1, ai - 1).unwrap());
                    }
                    let full = lemma7_matching(&d).unwrap();
                    assert_eq!(full.len(), d.a0.len());
                    let mut rights: Vec<_> = full.iter().map(|(_, r)| *r).collect();
                    rights.sort();
                    rights.dedup();
                    assert_eq!(rights.len(), full.len());
                }
            }
        }
    }

    #[test]
    fn no_saturating_matching_is_an_error() {
        let p = Params::new(4, 2).unwrap();
        let left = fam(4, 2, &[&[1, 2], &[1, 3]]);
        let right = SetFamily::from_element_lists(p, &[vec![3, 4]]).unwrap();
        assert_eq!(
            find_block_matching(&left, &right).unwrap_err(),
            Error::NoSaturatingMatching { found: 1, needed: 2 }
        );
    }

    #[test]
    fn proof_inequality_examples() {
        let r = check_proof_inequalities(6, 3).unwrap();
        let star_ratio = r.iter().find(|x| x.bound_name == "star_ratio" && x.parameter("i") == Some(2)).unwrap();
        assert_eq!((star_ratio.observed, star_ratio.bound_value), (Some(80), 100));
        assert_eq!(star_ratio.verdict, ReportVerdict::Holds);
        let ratio_in_x = r.iter().find(|x| x.bound_name == "ratio_in_x" && x.parameter("x") == Some(3)).unwrap();
        assert_eq!((ratio_in_x.observed, ratio_in_x.bound_value), (Some(12), 30));
        assert!(r.iter().all(BoundReport::passed));

        let r = check_proof_inequalities(4, 2).unwrap();
        let star_ratio = r.iter().find(|x| x.bound_name == "star_ratio").unwrap();
        assert_eq!((star_ratio.observed, star_ratio.bound_value), (Some(6), 9));
        assert!(check_proof_inequalities(5, 3).is_err());
    }

    #[test]
    fn report_json_roundtrip() {
        for rep in check_proof_inequalities(9, 4).unwrap() {
            let s = serde_json::to_string(&rep).unwrap();
            assert_eq!(serde_json::from_str::<BoundReport>(&s).unwrap(), rep);
        }
    }
}
