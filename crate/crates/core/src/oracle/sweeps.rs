//! Per-claim point expansion, size limits and evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::reference::{compat_table_brute, containment_table, sorted_layer_masks, to_mask, all_subsets, Bits};
use super::{Claim, Point, SweepConfig, SweepMode, Verdict, SEGMENT_PAIR_LIMIT};
use crate::binom::{binom, layer_size, MAX_N};
use crate::cross::{
    build_lemma7_decomposition, build_prop1_graph, check_proof_inequalities, extremal_sizes,
    find_block_matching, hilton_compress, is_boundary, lemma7_bound, prop1_degree, prop1_sum_bound, pyber_bound,
    segments_cross_intersect, thm1_bound, thm2_bound, Relation,
};
use crate::error::{Error, Result};
use crate::family::{full_mask, LayerIter, Params, SetFamily};
use crate::orders::{rank, OrderKind};
use crate::shadows::{kk_min_shadow, ShadowQuery};

pub(super) fn points(claim: Claim, cfg: &SweepConfig) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n in cfg.n_range.clone() {
        for k in cfg.k_range.clone() {
            let base = Point { n, k, i: None, t: None };
            match claim {
                Claim::Pyber | Claim::Thm1 | Claim::Prop1 | Claim::Inequalities => {
                    if k >= 1 && n >= 2 * k {
                        out.push(base);
                    }
                }
                Claim::Thm2 => {
                    if k >= 2 && n >= 2 * k {
                        for i in index_values(cfg, 3, k + 1) {
                            out.push(Point { i: Some(i), ..base });
                        }
                    }
                }
                Claim::Lemma7 => {
                    if k >= 1 && n >= 2 * k {
                        let default_hi = k;
                        let js: Vec<u32> = match &cfg.i_values {
                            Some(v) => v.iter().copied().filter(|&j| j >= 1 && j <= n).collect(),
                            None => (1..=default_hi).collect(),
                        };
                        for j in js {
                            out.push(Point { i: Some(j), ..base });
                        }
                    }
                }
                Claim::Kk | Claim::Hilton => {
                    if k >= 1 && n >= k {
                        let t = (claim == Claim::Kk).then(|| cfg.t.unwrap_or(k - 1));
                        if t.is_none_or(|t| t <= k) {
                            out.push(Point { t, ..base });
                        }
                    }
                }
                Claim::Mors => {
                    let t = cfg.t.unwrap_or(k.saturating_sub(1));
                    if n > k && k > t && t >= 1 {
                        out.push(Point { t: Some(t), ..base });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn index_values(cfg: &SweepConfig, lo: u32, hi: u32) -> Vec<u32> {
    match &cfg.i_values {
        Some(v) => v.iter().copied().filter(|&i| i >= lo && i <= hi).collect(),
        None => (lo..=hi).collect(),
    }
}

fn too_big(what: &str, p: Point, size: impl std::fmt::Display, limit: impl std::fmt::Display) -> Error {
    Error::ConfigBounds(format!(
        "{what} at n = {}, k = {} has size {size}, above the limit {limit}",
        p.n, p.k
    ))
}

/// `2^bits <= cap`.
fn pow2_within(bits: u64, cap: u64) -> bool {
    bits < 64 && (1u64 << bits) <= cap
}

pub(super) fn check_bounds(claim: Claim, mode: SweepMode, p: Point, cfg: &SweepConfig) -> Result<()> {
    if p.n > MAX_N {
        return Err(Error::ConfigBounds(format!("n = {} exceeds {MAX_N}", p.n)));
    }
    let total = layer_size(p.n, p.k);
    let cap = cfg.exhaustive_cap;
    match (claim, mode) {
        (Claim::Inequalities, _) => Ok(()),
        (Claim::Kk, SweepMode::ExhaustiveFamilies) => {
            if pow2_within(total, cap) {
                Ok(())
            } else {
                Err(too_big("family space 2^C(n,k)", p, format!("2^{total}"), cap))
            }
        }
        (Claim::Hilton, SweepMode::ExhaustiveFamilies) => {
            if pow2_within(2 * total, cap) {
                Ok(())
            } else {
                Err(too_big("pair space 2^(2 C(n,k))", p, format!("2^{}", 2 * total), cap))
            }
        }
        (Claim::Kk | Claim::Hilton, _) => {
            if total <= 64 {
                Ok(())
            } else {
                Err(too_big("sampled layer", p, total, 64))
            }
        }
        (Claim::Mors, _) => {
            let t = p.t.expect("mors points carry t");
            let count = if total <= 64 {
                binom(total as i64, layer_size(p.n - 1, p.k) as i64).ok()
            } else {
                None
            };
            match count {
                Some(c) if c <= cap as u128 => Ok(()),
                _ => Err(Error::ConfigBounds(format!(
                    "covering families at n = {}, l = {}, t = {t} exceed the limit {cap}",
                    p.n, p.k
                ))),
            }
        }
        _ => {
            if total <= SEGMENT_PAIR_LIMIT {
                Ok(())
            } else {
                Err(too_big("segment-pair layer C(n,k)", p, total, SEGMENT_PAIR_LIMIT))
            }
        }
    }
}

pub(super) fn evaluate(claim: Claim, mode: SweepMode, p: Point, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    check_bounds(claim, mode, p, cfg)?;
    match claim {
        Claim::Pyber => pyber(p),
        Claim::Thm1 => thm1(p, cfg),
        Claim::Thm2 => thm2(p),
        Claim::Prop1 => prop1(p),
        Claim::Lemma7 => lemma7(p),
        Claim::Kk => match mode {
            SweepMode::Sampled => kk_sampled(p, cfg),
            _ => kk_exhaustive(p),
        },
        Claim::Mors => mors(p),
        Claim::Hilton => match mode {
            SweepMode::Sampled => hilton_sampled(p, cfg),
            _ => hilton_exhaustive(p),
        },
        Claim::Inequalities => inequalities(p),
    }
}

/// `f(a)` = largest `b` with `L(a)`, `L(b)` cross-intersecting, for all `a`.
/// `f` is nonincreasing, so one pointer walks down from `C(n,k)`.
fn compat_curve(n: u32, k: u32) -> Result<Vec<u64>> {
    let total = layer_size(n, k);
    let mut f = Vec::with_capacity(total as usize + 1);
    let mut b = total;
    for a in 0..=total {
        while b > 0 && !segments_cross_intersect(n, k, a, b)? {
            b -= 1;
        }
        f.push(b);
    }
    Ok(f)
}

/// Best score over `(a, f(a))` for admissible `a`, with the maximisers.
fn best(
    f: &[u64],
    admissible: impl Fn(u64, u64) -> bool,
    score: impl Fn(u64, u64) -> u128,
) -> (u128, Vec<(u128, u128)>) {
    let mut top = 0u128;
    let mut at = Vec::new();
    for (a, &b) in f.iter().enumerate() {
        let a = a as u64;
        if !admissible(a, b) {
            continue;
        }
        let s = score(a, b);
        if at.is_empty() || s > top {
            top = s;
            at.clear();
        }
        if s == top {
            at.push((a as u128, b as u128));
        }
    }
    (top, at)
}

fn product(a: u64, b: u64) -> u128 {
    a as u128 * b as u128
}

fn sum(a: u64, b: u64) -> u128 {
    a as u128 + b as u128
}

fn boundary_note(p: Point) -> &'static str {
    if is_boundary(p.n, p.k) {
        "boundary n = 2k"
    } else {
        ""
    }
}

fn pyber(p: Point) -> Result<Vec<Verdict>> {
    let f = compat_curve(p.n, p.k)?;
    let (top, at) = best(&f, |_, _| true, product);
    let v = Verdict::new("pyber", p, pyber_bound(p.n, p.k)?, Relation::Equal, top)
        .attained(at)
        .detail(boundary_note(p));
    Ok(vec![v])
}

fn thm2(p: Point) -> Result<Vec<Verdict>> {
    let i = p.i.expect("thm2 points carry i");
    let bound = thm2_bound(p.n, p.k, i)?;
    let f = compat_curve(p.n, p.k)?;
    let threshold = bound.b_threshold;
    let (top, at) = best(&f, |a, b| a.max(b) as u128 >= threshold, product);
    let sweep = Verdict::new("thm2", p, bound.product_bound, Relation::Equal, top)
        .attained(at)
        .detail(boundary_note(p));

    // the extremal pair's sizes must form a cross-intersecting segment pair
    let (a_size, b_size) = extremal_sizes(p.n, p.k, i)?;
    let total = layer_size(p.n, p.k) as u128;
    let fits = b_size <= total && segments_cross_intersect(p.n, p.k, a_size as u64, b_size as u64)?;
    let observed = if fits { a_size * b_size } else { 0 };
    let example = Verdict::new("thm2_example", p, bound.product_bound, Relation::Equal, observed)
        .attained([(a_size, b_size)])
        .detail(format!("sizes ({a_size}, {b_size})"));
    Ok(vec![sweep, example])
}

fn thm1(p: Point, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    let (n, k) = (p.n, p.k);
    let bound = thm1_bound(n, k)?;
    let star = layer_size(n - 1, k - 1);
    let f = compat_curve(n, k)?;
    let (top, at) = best(&f, |a, b| a.max(b) > star, product);
    let at: Vec<_> = if top == bound { at } else { Vec::new() };
    let mut out = vec![Verdict::new("thm1", p, bound, Relation::LessOrEqual, top)
        .attained(at)
        .detail(boundary_note(p))];
    if let Some(v) = thm1_empty_intersection(p, cfg.exhaustive_cap)? {
        out.push(v);
    }
    Ok(out)
}

/// All `B` of size `C(n-1,k-1)` with empty intersection; `|A|` is at most the
/// number of `k`-sets meeting every member of `B`.
fn thm1_empty_intersection(p: Point, cap: u64) -> Result<Option<Verdict>> {
    let (n, k) = (p.n, p.k);
    if k < 2 || n <= 2 * k {
        return Ok(None);
    }
    let total = layer_size(n, k);
    let star = layer_size(n - 1, k - 1);
    if total > 64 || binom(total as i64, star as i64)? > cap as u128 {
        return Ok(None);
    }
    let layer: Vec<u64> = all_subsets(n, k).iter().map(|s| to_mask(s)).collect();
    let disjoint: Vec<u64> = layer
        .iter()
        .map(|&y| {
            layer
                .iter()
                .enumerate()
                .filter(|(_, &x)| x & y == 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let mut best_a = 0u64;
    let mut families = 0u64;
    for pick in LayerIter::new(total as u32, star as u32) {
        let mut common = full_mask(n);
        let mut blocked = 0u64;
        let mut rest = pick;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            common &= layer[idx];
            blocked |= disjoint[idx];
        }
        if common != 0 {
            continue;
        }
        families += 1;
        best_a = best_a.max(total - blocked.count_ones() as u64);
    }
    if families == 0 {
        return Ok(None);
    }
    let cap_a = star - layer_size(n - k - 1, k - 1);
    let strict = (best_a as u128 * star as u128) < thm1_bound(n, k)?;
    let v = Verdict::new("thm1_empty_intersection", p, cap_a as u128, Relation::LessOrEqual, best_a as u128)
        .detail(format!("families={families} strict_product={strict}"));
    Ok(Some(v))
}

fn prop1(p: Point) -> Result<Vec<Verdict>> {
    let (n, k) = (p.n, p.k);
    // nonempty families; for k >= 2 the binomial is already at least 1
    let lo = (binom(n as i64 - 2, k as i64 - 2)? as u64).max(1);
    let star = layer_size(n - 1, k - 1);
    let f = compat_curve(n, k)?;
    let (top, at) = best(&f, |a, b| a >= lo && b >= lo, sum);
    let bound = prop1_sum_bound(n, k)?;
    let at: Vec<_> = if top == bound { at } else { Vec::new() };
    let sums = Verdict::new("prop1", p, bound, Relation::LessOrEqual, top).attained(at);

    let graph = build_prop1_graph(n, k)?;
    let degree = prop1_degree(n, k) as u128;
    let observed = if graph.is_consistent() { graph.regular_degree().unwrap_or(0) as u128 } else { 0 };
    let regular = Verdict::new("prop1_regular", p, degree, Relation::Equal, observed)
        .detail(format!("sides={}x{}", graph.left.len(), graph.right.len()));

    // every neighbour of B' = {B in L(b): 1 not in B} must lie outside L(a)
    let left_rank: Vec<u64> = graph.left.iter().map(|s| rank(s, OrderKind::Lex)).collect();
    let mut min_neighbor = vec![u64::MAX; graph.right.len()];
    for (i, j) in graph.edges() {
        min_neighbor[j] = min_neighbor[j].min(left_rank[i]);
    }
    let right: Vec<(u64, u64)> = graph
        .right
        .iter()
        .zip(&min_neighbor)
        .map(|(s, &mn)| (rank(s, OrderKind::Lex), mn))
        .collect();
    let mut violations = 0u128;
    let mut pairs = 0u64;
    for (a, &b) in f.iter().enumerate() {
        let a = a as u64;
        if a < lo || b < lo || b <= star {
            continue;
        }
        pairs += 1;
        violations += right.iter().filter(|&&(r, mn)| r < b && mn < a).count() as u128;
    }
    let containment = Verdict::new("prop1_containment", p, 0, Relation::Equal, violations)
        .detail(format!("pairs={pairs}"));
    Ok(vec![sums, regular, containment])
}

fn lemma7(p: Point) -> Result<Vec<Verdict>> {
    let (m, a, j) = (p.n, p.k, p.i.expect("lemma7 points carry j"));
    let lo = binom(m as i64 - j as i64, a as i64 - j as i64)? as u64;
    let f = compat_curve(m, a)?;
    let (top, at) = best(&f, |x, y| x >= lo && y >= x, sum);
    let bound = lemma7_bound(m, a, j)?;
    let at: Vec<_> = if top == bound { at } else { Vec::new() };
    let mut out = vec![Verdict::new("lemma7", p, bound, Relation::LessOrEqual, top)
        .attained(at)
        .detail(format!("m={m} a={a} j={j}"))];
    if j >= 2 {
        let d = build_lemma7_decomposition(m, a, j)?;
        let mut matched = 0u128;
        let mut sizes = Vec::new();
        for block in &d.blocks {
            let got = match find_block_matching(&block.p, &block.q) {
                Ok(v) => v.len(),
                Err(Error::NoSaturatingMatching { found, .. }) => found,
                Err(e) => return Err(e),
            };
            matched += got as u128;
            sizes.push(format!("{}:{}/{}", block.s, got, block.p.len()));
        }
        out.push(
            Verdict::new("lemma7_matching", p, d.a0.len() as u128, Relation::Equal, matched)
                .detail(format!("blocks {}", sizes.join(" "))),
        );
    }
    Ok(out)
}

fn shadow_tables(n: u32, k: u32, t: u32) -> (Vec<u64>, Vec<Bits>, usize) {
    let layer: Vec<u64> = all_subsets(n, k).iter().map(|s| to_mask(s)).collect();
    let lower: Vec<u64> = all_subsets(n, t).iter().map(|s| to_mask(s)).collect();
    let table = containment_table(&layer, &lower);
    (layer, table, lower.len())
}

fn kk_minima(n: u32, k: u32, t: u32) -> Result<Vec<u64>> {
    let params = Params::new(n, k)?;
    (0..=params.layer_size())
        .map(|m| Ok(kk_min_shadow(&ShadowQuery::new(params, t, m)?)))
        .collect()
}

fn kk_exhaustive(p: Point) -> Result<Vec<Verdict>> {
    let (n, k, t) = (p.n, p.k, p.t.expect("kk points carry t"));
    let (layer, table, lower_len) = shadow_tables(n, k, t);
    let kk = kk_minima(n, k, t)?;
    let mut min_by_size = vec![u64::MAX; layer.len() + 1];
    let mut violations = 0u128;
    let mut families = 0u64;

    // depth-first over include/exclude decisions, one union buffer per depth
    let mut stack = vec![Bits::zeros(lower_len); layer.len() + 1];
    fn go(
        i: usize,
        size: usize,
        table: &[Bits],
        stack: &mut [Bits],
        visit: &mut impl FnMut(usize, u64),
    ) {
        if i == table.len() {
            visit(size, stack[i].count());
            return;
        }
        let (done, next) = stack.split_at_mut(i + 1);
        next[0].clone_from(&done[i]);
        go(i + 1, size, table, stack, visit);
        let (done, next) = stack.split_at_mut(i + 1);
        next[0].clone_from(&done[i]);
        next[0].union_with(&table[i]);
        go(i + 1, size + 1, table, stack, visit);
    }
    go(0, 0, &table, &mut stack, &mut |size, shadow| {
        families += 1;
        if shadow < kk[size] {
            violations += 1;
        }
        min_by_size[size] = min_by_size[size].min(shadow);
    });

    let attained = min_by_size.iter().zip(&kk).filter(|(a, b)| a == b).count() as u128;
    Ok(vec![
        Verdict::new("kk", p, 0, Relation::Equal, violations).detail(format!("families={families}")),
        Verdict::new("kk_attained", p, kk.len() as u128, Relation::Equal, attained)
            .detail("sizes where the minimum over all families equals the colex segment's shadow"),
    ])
}

fn point_rng(seed: u64, p: Point) -> ChaCha8Rng {
    let tag = (p.n as u64) << 48 | (p.k as u64) << 32 | (p.t.unwrap_or(0) as u64) << 16;
    ChaCha8Rng::seed_from_u64(seed ^ tag)
}

fn random_subset(rng: &mut ChaCha8Rng, of: u64, density: f64) -> u64 {
    let mut out = 0u64;
    let mut rest = of;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        if rng.gen_bool(density) {
            out |= bit;
        }
    }
    out
}

fn layer_bits(len: usize) -> u64 {
    full_mask(len as u32)
}

fn kk_sampled(p: Point, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    let (n, k, t) = (p.n, p.k, p.t.expect("kk points carry t"));
    let (layer, table, lower_len) = shadow_tables(n, k, t);
    let kk = kk_minima(n, k, t)?;
    let mut rng = point_rng(cfg.seed, p);
    let all = layer_bits(layer.len());
    let mut violations = 0u128;
    for _ in 0..cfg.sample_count {
        let density = rng.gen::<f64>();
        let fam = random_subset(&mut rng, all, density);
        let mut sh = Bits::zeros(lower_len);
        let mut rest = fam;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            sh.union_with(&table[idx]);
        }
        if sh.count() < kk[fam.count_ones() as usize] {
            violations += 1;
        }
    }
    Ok(vec![Verdict::new("kk", p, 0, Relation::Equal, violations)
        .seeded(cfg.seed)
        .detail(format!("samples={}", cfg.sample_count))])
}

fn mors(p: Point) -> Result<Vec<Verdict>> {
    let (n, l, t) = (p.n, p.k, p.t.expect("mors points carry t"));
    let (layer, table, lower_len) = shadow_tables(n, l, t);
    let size = layer_size(n - 1, l) as u32;
    let full = full_mask(n);
    let mut families = 0u64;
    let mut covering = 0u64;
    let mut least = u128::MAX;
    for pick in LayerIter::new(layer.len() as u32, size) {
        families += 1;
        let mut union = 0u64;
        let mut sh = Bits::zeros(lower_len);
        let mut rest = pick;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            union |= layer[idx];
            sh.union_with(&table[idx]);
        }
        if union == full {
            covering += 1;
            least = least.min(sh.count() as u128);
        }
    }
    if covering == 0 {
        return Err(Error::InvalidParams(format!("no covering families at n = {n}, l = {l}")));
    }
    Ok(vec![Verdict::new("mors", p, crate::shadows::mors_bound(n, l, t)?, Relation::GreaterOrEqual, least)
        .detail(format!("families={families} covering={covering}"))])
}

/// Disjointness masks over the lex-sorted layer and the brute compatibility
/// table for it.
fn hilton_tables(n: u32, k: u32) -> (Vec<u64>, Vec<u64>) {
    let lex = sorted_layer_masks(n, k, OrderKind::Lex);
    let disjoint = lex
        .iter()
        .map(|&y| {
            lex.iter()
                .enumerate()
                .filter(|(_, &x)| x & y == 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    (disjoint, compat_table_brute(n, k))
}

/// Sets meeting every member of the family `a` (as a mask over the layer).
fn meeting_all(a: u64, disjoint: &[u64], all: u64) -> u64 {
    let mut blocked = 0u64;
    let mut rest = a;
    while rest != 0 {
        let idx = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        blocked |= disjoint[idx];
    }
    all & !blocked
}

fn hilton_exhaustive(p: Point) -> Result<Vec<Verdict>> {
    let (disjoint, f) = hilton_tables(p.n, p.k);
    let len = disjoint.len();
    let all = layer_bits(len);
    let lex = sorted_layer_masks(p.n, p.k, OrderKind::Lex);
    let params = Params::new(p.n, p.k)?;
    let family = |bits: u64| {
        SetFamily::from_masks_unchecked(params, (0..len).filter(|&i| bits >> i & 1 == 1).map(|i| lex[i]))
    };
    let mut cross = 0u64;
    let mut violations = 0u128;
    let mut bad_compressions = 0u128;
    for a in 0..=all {
        let ok = meeting_all(a, &disjoint, all);
        let limit = f[a.count_ones() as usize];
        let fa = family(a);
        for b in 0..=all {
            if b & !ok != 0 {
                continue;
            }
            cross += 1;
            if b.count_ones() as u64 > limit {
                violations += 1;
            }
            // The library's compression must return the lex prefixes of the
            // same sizes, and those prefixes must be pairwise intersecting.
            let good = match hilton_compress(&fa, &family(b)) {
                Ok((sa, sb)) => {
                    let (ma, mb) = (layer_bits(sa.size() as usize), layer_bits(sb.size() as usize));
                    sa.materialize() == family(ma)
                        && sb.materialize() == family(mb)
                        && sa.size() == a.count_ones() as u64
                        && sb.size() == b.count_ones() as u64
                        && meeting_all(ma, &disjoint, all) & mb == mb
                }
                Err(_) => false,
            };
            if !good {
                bad_compressions += 1;
            }
        }
    }
    Ok(vec![
        Verdict::new("hilton", p, 0, Relation::Equal, violations)
            .detail(format!("pairs={} cross_intersecting={cross}", (all as u128 + 1).pow(2))),
        Verdict::new("hilton_compress", p, 0, Relation::Equal, bad_compressions)
            .detail(format!("compressed={cross}")),
    ])
}

fn hilton_sampled(p: Point, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    let (disjoint, f) = hilton_tables(p.n, p.k);
    let all = layer_bits(disjoint.len());
    let mut rng = point_rng(cfg.seed, p);
    let mut violations = 0u128;
    for _ in 0..cfg.sample_count {
        let da = rng.gen::<f64>();
        let a = random_subset(&mut rng, all, da);
        let ok = meeting_all(a, &disjoint, all);
        let db = rng.gen::<f64>();
        let b = random_subset(&mut rng, ok, db);
        if b.count_ones() as u64 > f[a.count_ones() as usize] {
            violations += 1;
        }
    }
    Ok(vec![Verdict::new("hilton", p, 0, Relation::Equal, violations)
        .seeded(cfg.seed)
        .detail(format!("samples={}", cfg.sample_count))])
}

fn inequalities(p: Point) -> Result<Vec<Verdict>> {
    Ok(check_proof_inequalities(p.n, p.k)?
        .into_iter()
        .map(|r| {
            let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let i = r.parameter("i").map(|x| x as u32);
            Verdict::new(
                &r.bound_name,
                Point { i, ..p },
                r.bound_value,
                r.relation,
                r.observed.unwrap_or(0),
            )
            .detail(params.join(" "))
        })
        .collect())
}
