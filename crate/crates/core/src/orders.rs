//! Lexicographic, colex and reversed-colex orders on `k`-subsets.
//!
//! With bit `e - 1` standing for element `e`, colex order is numeric order of
//! the masks. Mirroring the ground set (`e -> n + 1 - e`) turns colex into
//! reversed colex, and reversed colex is exactly the reverse of lex. Ranks are
//! 0-based and go through the combinatorial number system.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binom::layer_size;
use crate::error::{Error, Result};
use crate::family::{KSubset, LayerIter, Params, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Colex,
    #[serde(rename = "revcolex")]
    RevColex,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Lex, OrderKind::Colex, OrderKind::RevColex];

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::Colex => "colex",
            OrderKind::RevColex => "revcolex",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "colex" => Ok(OrderKind::Colex),
            "revcolex" => Ok(OrderKind::RevColex),
            other => Err(Error::InvalidParams(format!("unknown order '{other}'"))),
        }
    }
}

/// Initial segment descriptor: the first `size` sets of `params` under `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentSpec {
    pub order: OrderKind,
    pub params: Params,
    size: u64,
}

impl SegmentSpec {
    pub fn new(order: OrderKind, params: Params, size: u64) -> Result<Self> {
        let total = params.layer_size();
        if size > total {
            return Err(Error::SegmentOutOfRange { m: size, n: params.n(), k: params.k(), total });
        }
        Ok(SegmentSpec { order, params, size })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn materialize(&self) -> SetFamily {
        initial_segment(self)
    }
}

/// Mirror image of a mask under `e -> n + 1 - e`.
#[inline]
pub(crate) fn mirror(bits: u64, n: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        bits.reverse_bits() >> (64 - n)
    }
}

#[inline]
pub(crate) fn colex_rank_bits(bits: u64) -> u64 {
    let mut rank = 0;
    let mut rest = bits;
    let mut j = 1;
    while rest != 0 {
        let p = rest.trailing_zeros();
        rank += layer_size(p, j);
        rest &= rest - 1;
        j += 1;
    }
    rank
}

pub(crate) fn colex_unrank_bits(mut rank: u64, n: u32, k: u32) -> u64 {
    let mut bits = 0u64;
    let mut hi = n;
    for j in (1..=k).rev() {
        // largest p < hi with C(p, j) <= rank
        let mut p = hi - 1;
        while layer_size(p, j) > rank {
            p -= 1;
        }
        rank -= layer_size(p, j);
        bits |= 1 << p;
        hi = p;
    }
    bits
}

#[inline]
pub(crate) fn rank_bits(bits: u64, params: Params, order: OrderKind) -> u64 {
    match order {
        OrderKind::Colex => colex_rank_bits(bits),
        OrderKind::RevColex => colex_rank_bits(mirror(bits, params.n())),
        OrderKind::Lex => params.layer_size() - 1 - colex_rank_bits(mirror(bits, params.n())),
    }
}

#[inline]
pub(crate) fn unrank_bits(rank: u64, params: Params, order: OrderKind) -> u64 {
    let (n, k) = (params.n(), params.k());
    match order {
        OrderKind::Colex => colex_unrank_bits(rank, n, k),
        OrderKind::RevColex => mirror(colex_unrank_bits(rank, n, k), n),
        OrderKind::Lex => mirror(colex_unrank_bits(params.layer_size() - 1 - rank, n, k), n),
    }
}

/// Compares two subsets of the same `(n, k)` under `order`.
pub fn compare(a: &KSubset, b: &KSubset, order: OrderKind) -> Result<Ordering> {
    if a.params() != b.params() {
        return Err(Error::ParamsMismatch { n1: a.n(), k1: a.len(), n2: b.n(), k2: b.len() });
    }
    let n = a.n();
    Ok(match order {
        OrderKind::Colex => a.bits().cmp(&b.bits()),
        OrderKind::RevColex => mirror(a.bits(), n).cmp(&mirror(b.bits(), n)),
        OrderKind::Lex => mirror(b.bits(), n).cmp(&mirror(a.bits(), n)),
    })
}

/// 0-based position of `s` among the `|s|`-subsets of `[n]`.
pub fn rank(s: &KSubset, order: OrderKind) -> u64 {
    rank_bits(s.bits(), s.params(), order)
}

pub fn unrank(rank: u64, order: OrderKind, params: Params) -> Result<KSubset> {
    let total = params.layer_size();
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, n: params.n(), k: params.k(), total });
    }
    Ok(KSubset::from_bits_unchecked(params.n(), unrank_bits(rank, params, order)))
}

/// Masks of the initial segment, in order.
pub(crate) fn segment_masks(order: OrderKind, params: Params, m: u64) -> Vec<u64> {
    let (n, k) = (params.n(), params.k());
    match order {
        OrderKind::Colex => LayerIter::new(n, k).take(m as usize).collect(),
        OrderKind::RevColex => LayerIter::new(n, k).take(m as usize).map(|b| mirror(b, n)).collect(),
        OrderKind::Lex => (0..m).map(|r| unrank_bits(r, params, OrderKind::Lex)).collect(),
    }
}

/// The first `spec.size()` sets under `spec.order`.
pub fn initial_segment(spec: &SegmentSpec) -> SetFamily {
    SetFamily::from_masks_unchecked(spec.params, segment_masks(spec.order, spec.params, spec.size))
}

/// Rank identities relating lex, reversed colex and complementation.
///
/// With `C = C(n, a)` and all ranks 0-based, checks that
/// `rank_revcolex(s) = C - 1 - rank_lex(s)`,
/// `rank_lex(s^c) = C - 1 - rank_lex(s)`,
/// `rank_revcolex(s^c) = rank_lex(s)` and
/// `rank_colex(s^c) = C - 1 - rank_colex(s)`.
pub fn rank_duality_check(s: &KSubset) -> bool {
    let last = s.params().layer_size() - 1;
    let c = s.complement();
    let lex = rank(s, OrderKind::Lex);
    rank(s, OrderKind::RevColex) == last - lex
        && rank(&c, OrderKind::Lex) == last - lex
        && rank(&c, OrderKind::RevColex) == lex
        && rank(&c, OrderKind::Colex) == last - rank(s, OrderKind::Colex)
}
