//! Structural properties checked over whole parameter ranges.
//!
//! Each check returns one [`Verdict`] per parameter point with the number of
//! failing cases as `observed` (expected 0) and the number of cases in
//! `detail`.

use super::reference::{all_subsets, compat_table_brute, sorted_layer_masks, to_mask};
use super::{Point, Verdict};
use crate::binom::layer_size;
use crate::cross::{max_compatible_b, segments_cross_intersect, thm2_bound, Relation};
use crate::error::Result;
use crate::family::{KSubset, LayerIter, Params};
use crate::orders::{rank, rank_duality_check, segment_masks, unrank, OrderKind};
use crate::shadows::{kk_min_shadow, lovasz_bound, shadow_masks, ShadowQuery};

fn tally(claim: &str, p: Point, failures: u64, cases: u64) -> Verdict {
    Verdict::new(claim, p, 0, Relation::Equal, failures as u128).detail(format!("cases={cases}"))
}

fn pt(n: u32, k: u32) -> Point {
    Point { n, k, i: None, t: None }
}

/// `unrank(rank(s)) = s` and `rank(unrank(r)) = r` in every order.
pub fn rank_roundtrip(n: u32, k: u32) -> Result<Verdict> {
    let params = Params::new(n, k)?;
    let (mut fails, mut cases) = (0, 0);
    for order in OrderKind::ALL {
        for r in 0..params.layer_size() {
            let s = unrank(r, order, params)?;
            cases += 1;
            if rank(&s, order) != r {
                fails += 1;
            }
        }
        for bits in LayerIter::new(n, k) {
            let s = KSubset::from_bits(n, bits)?;
            cases += 1;
            if unrank(rank(&s, order), order, params)? != s {
                fails += 1;
            }
        }
    }
    Ok(tally("rank_roundtrip", pt(n, k), fails, cases))
}

/// Ranks agree with positions in the layer sorted by the set-difference
/// definitions.
pub fn rank_matches_enumeration(n: u32, k: u32) -> Result<Verdict> {
    let params = Params::new(n, k)?;
    let (mut fails, mut cases) = (0, 0);
    for order in OrderKind::ALL {
        let sorted = sorted_layer_masks(n, k, order);
        let fast = segment_masks(order, params, params.layer_size());
        for (pos, &bits) in sorted.iter().enumerate() {
            cases += 1;
            let s = KSubset::from_bits(n, bits)?;
            if rank(&s, order) != pos as u64 || fast[pos] != bits {
                fails += 1;
            }
        }
    }
    Ok(tally("rank_matches_enumeration", pt(n, k), fails, cases))
}

/// Lex/reversed-colex and complement dualities for every set of the layer.
pub fn rank_dualities(n: u32, k: u32) -> Result<Verdict> {
    let (mut fails, mut cases) = (0, 0);
    for bits in LayerIter::new(n, k) {
        cases += 1;
        if !rank_duality_check(&KSubset::from_bits(n, bits)?) {
            fails += 1;
        }
    }
    Ok(tally("rank_dualities", pt(n, k), fails, cases))
}

/// The `(k-1)`-shadow of every reversed-colex initial segment is again a
/// reversed-colex initial segment.
pub fn revcolex_shadow_closure(n: u32, k: u32) -> Result<Verdict> {
    let params = Params::new(n, k)?;
    let lower = sorted_layer_masks(n, k - 1, OrderKind::RevColex);
    let (mut fails, mut cases) = (0, 0);
    for m in 0..=params.layer_size() {
        cases += 1;
        let sh = shadow_masks(segment_masks(OrderKind::RevColex, params, m), k - 1);
        if !lower[..sh.len()].iter().all(|x| sh.contains(x)) {
            fails += 1;
        }
    }
    Ok(tally("revcolex_shadow_closure", pt(n, k), fails, cases))
}

/// `C(x, t) <= KK(m)` for every `m`, `t < k`, with equality when `m = C(s, k)`.
pub fn lovasz_below_kk(n: u32, k: u32) -> Result<Verdict> {
    let params = Params::new(n, k)?;
    let (mut fails, mut cases) = (0, 0);
    for t in 0..k {
        for m in 1..=params.layer_size() {
            cases += 1;
            let exact = kk_min_shadow(&ShadowQuery::new(params, t, m)?) as f64;
            let real = lovasz_bound(m, k, t)?;
            if real > exact * (1.0 + 1e-9) {
                fails += 1;
            }
        }
        for s in k..=n {
            cases += 1;
            let m = layer_size(s, k);
            let real = lovasz_bound(m, k, t)?;
            let want = layer_size(s, t) as f64;
            if (real - want).abs() > 1e-9 * want.max(1.0) {
                fails += 1;
            }
        }
    }
    Ok(tally("lovasz_below_kk", pt(n, k), fails, cases))
}

/// The minimum shadow is nondecreasing in `m`.
pub fn kk_monotone(n: u32, k: u32) -> Result<Verdict> {
    let params = Params::new(n, k)?;
    let (mut fails, mut cases) = (0, 0);
    for t in 0..=k {
        let mut prev = 0;
        for m in 0..=params.layer_size() {
            cases += 1;
            let v = kk_min_shadow(&ShadowQuery::new(params, t, m)?);
            if v < prev {
                fails += 1;
            }
            prev = v;
        }
    }
    Ok(tally("kk_monotone", pt(n, k), fails, cases))
}

/// The constrained product bound is nondecreasing in `i`.
pub fn thm2_monotone_in_i(n: u32, k: u32) -> Result<Verdict> {
    let (mut fails, mut cases) = (0, 0);
    for i in 3..=k {
        cases += 1;
        if thm2_bound(n, k, i)?.product_bound > thm2_bound(n, k, i + 1)?.product_bound {
            fails += 1;
        }
    }
    Ok(tally("thm2_monotone_in_i", pt(n, k), fails, cases))
}

/// Shadow-criterion `max_compatible_b` against pairwise brute force, plus
/// symmetry of the segment predicate and monotonicity of the curve.
pub fn maxb_agreement(n: u32, k: u32) -> Result<Verdict> {
    let brute = compat_table_brute(n, k);
    let (mut fails, mut cases) = (0, 0);
    for (a, &want) in brute.iter().enumerate() {
        cases += 1;
        if max_compatible_b(n, k, a as u64)? != want {
            fails += 1;
        }
        if a > 0 && brute[a] > brute[a - 1] {
            fails += 1;
        }
    }
    let total = layer_size(n, k);
    for a in 0..=total {
        for b in 0..=total {
            cases += 1;
            let ab = segments_cross_intersect(n, k, a, b)?;
            if ab != segments_cross_intersect(n, k, b, a)? || ab != (b <= brute[a as usize]) {
                fails += 1;
            }
        }
    }
    Ok(tally("maxb_agreement", pt(n, k), fails, cases))
}

/// Complementing twice is the identity and swaps `k` with `n - k`.
pub fn complement_involution(n: u32, k: u32) -> Result<Verdict> {
    let (mut fails, mut cases) = (0, 0);
    for s in all_subsets(n, k) {
        cases += 1;
        let x = KSubset::from_bits(n, to_mask(&s))?;
        let c = x.complement();
        if c.len() != n - k || c.complement() != x || !c.is_disjoint(&x) {
            fails += 1;
        }
    }
    Ok(tally("complement_involution", pt(n, k), fails, cases))
}

/// Every property above over the standard ranges: ranks and dualities for
/// `n <= 12`, enumeration for `n <= 10`, shadow closure for `n <= 9`,
/// Lovász and KK monotonicity for `n <= 12`, `thm2` monotonicity for
/// `n <= 20, k <= 8`, and the compatibility agreement for `C(n,k) <= 300`.
pub fn standard_suite() -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in 1..=12 {
        for k in 0..=n {
            out.push(rank_roundtrip(n, k)?);
            out.push(rank_dualities(n, k)?);
            out.push(complement_involution(n, k)?);
            if n <= 10 {
                out.push(rank_matches_enumeration(n, k)?);
            }
            if k >= 1 {
                if n <= 9 {
                    out.push(revcolex_shadow_closure(n, k)?);
                }
                out.push(lovasz_below_kk(n, k)?);
                out.push(kk_monotone(n, k)?);
            }
        }
    }
    for n in 4..=20 {
        for k in 2..=8.min(n / 2) {
            out.push(thm2_monotone_in_i(n, k)?);
        }
    }
    for n in 2..=25 {
        for k in 1..=n / 2 {
            if layer_size(n, k) <= 300 {
                out.push(maxb_agreement(n, k)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_points_pass() {
        for v in [
            rank_roundtrip(6, 3).unwrap(),
            rank_matches_enumeration(6, 2).unwrap(),
            rank_dualities(7, 3).unwrap(),
            revcolex_shadow_closure(6, 3).unwrap(),
            lovasz_below_kk(7, 3).unwrap(),
            kk_monotone(7, 3).unwrap(),
            thm2_monotone_in_i(10, 4).unwrap(),
            maxb_agreement(6, 3).unwrap(),
            complement_involution(5, 2).unwrap(),
        ] {
            assert!(v.passed, "{v:?}");
        }
    }
}
