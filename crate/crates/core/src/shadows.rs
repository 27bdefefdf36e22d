//! Shadows and the lower bounds on their size.

use std::collections::HashSet;

use crate::binom::{binom, layer_size};
use crate::error::{Error, Result};
use crate::family::{BitIter, LayerIter, Params, SetFamily};
use crate::orders::{segment_masks, OrderKind};

/// Families up to this size are expanded explicitly by [`kk_min_shadow`].
pub const SEGMENT_PATH_LIMIT: u64 = 1_000_000;

/// `|S^(t)(F)|` for some `F` of `m` sets in the layer `params`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShadowQuery {
    pub params: Params,
    pub t: u32,
    pub m: u64,
}

impl ShadowQuery {
    pub fn new(params: Params, t: u32, m: u64) -> Result<Self> {
        if t > params.k() {
            return Err(Error::InvalidParams(format!("t = {t} exceeds k = {}", params.k())));
        }
        let total = params.layer_size();
        if m > total {
            return Err(Error::SegmentOutOfRange { m, n: params.n(), k: params.k(), total });
        }
        Ok(ShadowQuery { params, t, m })
    }
}

/// Solution of `C(x, k) = m` on the increasing branch `x >= k - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LovaszRoot {
    pub x: f64,
    pub m: u64,
    pub k: u32,
}

/// Calls `f` with every `t`-element submask of `mask`.
pub(crate) fn for_each_submask(mask: u64, t: u32, mut f: impl FnMut(u64)) {
    let positions: Vec<u32> = BitIter(mask).collect();
    let k = positions.len() as u32;
    if t > k {
        return;
    }
    for pick in LayerIter::new(k, t) {
        let mut sub = 0u64;
        for idx in BitIter(pick) {
            sub |= 1 << positions[idx as usize];
        }
        f(sub);
    }
}

pub(crate) fn shadow_masks<I: IntoIterator<Item = u64>>(masks: I, t: u32) -> HashSet<u64> {
    let mut out = HashSet::new();
    for m in masks {
        for_each_submask(m, t, |s| {
            out.insert(s);
        });
    }
    out
}

/// All `t`-subsets contained in some member of `f`.
pub fn shadow(f: &SetFamily, t: u32) -> Result<SetFamily> {
    let p = f.params();
    if t > p.k() {
        return Err(Error::InvalidParams(format!("t = {t} exceeds k = {}", p.k())));
    }
    let out = Params::new(p.n(), t)?;
    Ok(SetFamily::from_masks_unchecked(out, shadow_masks(f.masks(), t)))
}

/// Greedy cascade `m = C(a_k, k) + C(a_{k-1}, k-1) + ... + C(a_s, s)` with
/// `a_k > a_{k-1} > ... > a_s >= s >= 1`. Returns `(a_i, i)` pairs.
pub fn cascade(m: u64, k: u32) -> Vec<(u32, u32)> {
    let mut rest = m;
    let mut out = Vec::new();
    let mut i = k;
    while rest > 0 && i > 0 {
        let mut a = i;
        while a < 64 && layer_size(a + 1, i) <= rest {
            a += 1;
        }
        rest -= layer_size(a, i);
        out.push((a, i));
        i -= 1;
    }
    out
}

/// Kruskal–Katona minimum via the cascade: `sum C(a_i, i - (k - t))`.
pub fn kk_min_shadow_cascade(q: &ShadowQuery) -> u64 {
    let k = q.params.k();
    let drop = (k - q.t) as i64;
    cascade(q.m, k)
        .into_iter()
        .map(|(a, i)| binom(a as i64, i as i64 - drop).expect("a <= 64") as u64)
        .sum()
}

/// Kruskal–Katona minimum by expanding the colex segment of size `m`.
pub fn kk_min_shadow_segment(q: &ShadowQuery) -> u64 {
    shadow_masks(segment_masks(OrderKind::Colex, q.params, q.m), q.t).len() as u64
}

/// `|S^(t)(C^(k)(m))|`, the least possible `t`-shadow of `m` sets.
pub fn kk_min_shadow(q: &ShadowQuery) -> u64 {
    if q.m <= SEGMENT_PATH_LIMIT {
        kk_min_shadow_segment(q)
    } else {
        kk_min_shadow_cascade(q)
    }
}

/// `C(x, k)` as the degree-`k` polynomial in real `x`.
pub fn real_binom(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

fn root_tolerance(m: f64) -> f64 {
    (1e-9 * m).max(1e-9)
}

/// Unique `x >= k - 1` with `C(x, k) = m`.
pub fn lovasz_root(m: u64, k: u32) -> Result<LovaszRoot> {
    if k == 0 {
        return Err(Error::InvalidParams("C(x, 0) is constant; k must be positive".into()));
    }
    let base = (k - 1) as f64;
    if m == 0 {
        return Ok(LovaszRoot { x: base, m, k });
    }
    let target = m as f64;
    let (mut lo, mut hi) = (base, base + target);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if real_binom(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let v = real_binom(x, k);
        let slope: f64 = v * (0..k).map(|i| 1.0 / (x - i as f64)).sum::<f64>();
        if slope <= 0.0 || !slope.is_finite() {
            break;
        }
        let step = (v - target) / slope;
        let next = x - step;
        if !(base..=base + target).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= f64::EPSILON * x.abs() {
            break;
        }
    }
    // snap exact integer roots so C(x, t) is exact there
    let r = x.round();
    if (x - r).abs() < 1e-6 && r >= k as f64 && binom(r as i64, k as i64).ok() == Some(m as u128) {
        x = r;
    }
    if (real_binom(x, k) - target).abs() > root_tolerance(target) {
        return Err(Error::Solver(format!("no root of C(x,{k}) = {m} within tolerance")));
    }
    Ok(LovaszRoot { x, m, k })
}

/// Lovász form of the shadow bound: `C(x, t)` where `C(x, k) = m`.
pub fn lovasz_bound(m: u64, k: u32, t: u32) -> Result<f64> {
    if t > k {
        return Err(Error::InvalidParams(format!("t = {t} exceeds k = {k}")));
    }
    if m == 0 {
        return Ok(0.0);
    }
    if k == 0 {
        return Ok(m as f64);
    }
    let root = lovasz_root(m, k)?;
    Ok(real_binom(root.x, t))
}

/// `C(n - 1, t) + C(l - 1, t - 1)`, the shadow bound for `C(n - 1, l)`
/// `l`-sets covering `[n]`.
pub fn mors_bound(n: u32, l: u32, t: u32) -> Result<u128> {
    if !(n >= l && l > t && t >= 1) {
        return Err(Error::InvalidParams(format!(
            "need n >= l > t >= 1, got n = {n}, l = {l}, t = {t}"
        )));
    }
    Ok(binom(n as i64 - 1, t as i64)? + binom(l as i64 - 1, t as i64 - 1)?)
}
