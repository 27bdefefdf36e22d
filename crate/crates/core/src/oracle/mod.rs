//! Brute-force verifiers for every bound in the crate.
//!
//! A sweep expands a [`SweepConfig`] into parameter points ([`plan`]) and
//! evaluates each point independently ([`evaluate`]), producing one or more
//! [`Verdict`]s per point. Points share no state, so callers may evaluate them
//! on any number of threads; [`run`] does it sequentially.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cross::Relation;
use crate::error::{Error, Result};

pub mod properties;
pub mod reference;
mod sweeps;

/// Default ceiling on the size of any exhaustively enumerated space.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1 << 20;
/// Environment variable overriding [`DEFAULT_EXHAUSTIVE_CAP`].
pub const MAX_EXHAUSTIVE_ENV: &str = "CROSSFAM_MAX_EXHAUSTIVE";
/// Segment-pair sweeps are limited to layers of at most this many sets.
pub const SEGMENT_PAIR_LIMIT: u64 = 10_000;

/// The exhaustive cap in effect: [`MAX_EXHAUSTIVE_ENV`] if set and valid.
pub fn exhaustive_cap() -> u64 {
    std::env::var(MAX_EXHAUSTIVE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXHAUSTIVE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Pyber,
    Thm1,
    Thm2,
    Prop1,
    Lemma7,
    Kk,
    Mors,
    Hilton,
    Inequalities,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::Pyber,
        Claim::Thm1,
        Claim::Thm2,
        Claim::Prop1,
        Claim::Lemma7,
        Claim::Kk,
        Claim::Mors,
        Claim::Hilton,
        Claim::Inequalities,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Pyber => "pyber",
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Prop1 => "prop1",
            Claim::Lemma7 => "lemma7",
            Claim::Kk => "kk",
            Claim::Mors => "mors",
            Claim::Hilton => "hilton",
            Claim::Inequalities => "inequalities",
        }
    }

    /// Mode used when the config leaves it unset.
    pub fn default_mode(&self) -> SweepMode {
        match self {
            Claim::Kk | Claim::Mors | Claim::Hilton => SweepMode::ExhaustiveFamilies,
            _ => SweepMode::SegmentPairs,
        }
    }

    pub fn supports(&self, mode: SweepMode) -> bool {
        match self {
            Claim::Kk | Claim::Hilton => mode != SweepMode::SegmentPairs,
            Claim::Mors => mode == SweepMode::ExhaustiveFamilies,
            _ => mode == SweepMode::SegmentPairs,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown claim '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    ExhaustiveFamilies,
    SegmentPairs,
    Sampled,
}

impl SweepMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepMode::ExhaustiveFamilies => "exhaustive_families",
            SweepMode::SegmentPairs => "segment_pairs",
            SweepMode::Sampled => "sampled",
        }
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive_families" | "exhaustive" => Ok(SweepMode::ExhaustiveFamilies),
            "segment_pairs" | "segments" => Ok(SweepMode::SegmentPairs),
            "sampled" => Ok(SweepMode::Sampled),
            _ => Err(Error::InvalidParams(format!("unknown sweep mode '{s}'"))),
        }
    }
}

/// What to sweep. For `lemma7` the ranges are read as `m` (`n_range`),
/// `a` (`k_range`) and `j` (`i_values`); for `mors` `k_range` is `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_range: RangeInclusive<u32>,
    pub k_range: RangeInclusive<u32>,
    pub i_values: Option<Vec<u32>>,
    pub t: Option<u32>,
    pub mode: Option<SweepMode>,
    pub sample_count: u64,
    pub seed: u64,
    pub exhaustive_cap: u64,
}

impl SweepConfig {
    pub fn new(n_range: RangeInclusive<u32>, k_range: RangeInclusive<u32>) -> Self {
        SweepConfig {
            n_range,
            k_range,
            i_values: None,
            t: None,
            mode: None,
            sample_count: 100_000,
            seed: 0x5eed,
            exhaustive_cap: exhaustive_cap(),
        }
    }

    pub fn point(n: u32, k: u32) -> Self {
        Self::new(n..=n, k..=k)
    }

    pub fn with_i_values(mut self, i: Vec<u32>) -> Self {
        self.i_values = Some(i);
        self
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_mode(mut self, mode: SweepMode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn with_samples(mut self, count: u64) -> Self {
        self.sample_count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_exhaustive_cap(mut self, cap: u64) -> Self {
        self.exhaustive_cap = cap;
        self
    }

    pub fn mode_for(&self, claim: Claim) -> SweepMode {
        self.mode.unwrap_or(claim.default_mode())
    }
}

/// One parameter point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub n: u32,
    pub k: u32,
    pub i: Option<u32>,
    pub t: Option<u32>,
}

/// Outcome of one check: `observed relation expected`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub n: u32,
    pub k: u32,
    pub i: Option<u32>,
    pub t: Option<u32>,
    #[serde(with = "crate::exact")]
    pub expected: u128,
    #[serde(with = "crate::exact")]
    pub observed: u128,
    pub relation: Relation,
    #[serde(with = "crate::exact::pairs")]
    pub attained_at: Vec<(u128, u128)>,
    pub passed: bool,
    pub seed: Option<u64>,
    pub detail: String,
}

impl Verdict {
    pub fn new(claim: &str, p: Point, expected: u128, relation: Relation, observed: u128) -> Self {
        Verdict {
            claim: claim.to_string(),
            n: p.n,
            k: p.k,
            i: p.i,
            t: p.t,
            expected,
            observed,
            relation,
            attained_at: Vec::new(),
            passed: relation.holds(observed, expected),
            seed: None,
            detail: String::new(),
        }
    }

    /// Sets the attaining pairs, normalised to `(min, max)`, sorted and deduplicated.
    pub fn attained(mut self, pairs: impl IntoIterator<Item = (u128, u128)>) -> Self {
        let mut v: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        v.sort_unstable();
        v.dedup();
        self.attained_at = v;
        self
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

/// Expands the config into the points `claim` is evaluated at, rejecting
/// configs that break the mode's size limits.
pub fn plan(claim: Claim, cfg: &SweepConfig) -> Result<Vec<Point>> {
    let mode = cfg.mode_for(claim);
    if !claim.supports(mode) {
        return Err(Error::ConfigBounds(format!(
            "claim {claim} does not support mode {}",
            mode.as_str()
        )));
    }
    let points = sweeps::points(claim, cfg)?;
    if points.is_empty() {
        return Err(Error::ConfigBounds(format!("no valid parameter points for {claim}")));
    }
    for p in &points {
        sweeps::check_bounds(claim, mode, *p, cfg)?;
    }
    Ok(points)
}

/// Verdicts for one point produced by [`plan`].
pub fn evaluate(claim: Claim, point: Point, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    sweeps::evaluate(claim, cfg.mode_for(claim), point, cfg)
}

/// [`plan`] then [`evaluate`] every point in order.
pub fn run(claim: Claim, cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for p in plan(claim, cfg)? {
        out.extend(evaluate(claim, p, cfg)?);
    }
    Ok(out)
}

/// Maximum of `a * f(a)` over segment pairs must equal `C(n-1,k-1)^2`.
pub fn sweep_pyber(cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    run(Claim::Pyber, cfg)
}

/// Constrained product maximum must equal the closed form, with the
/// extremal pair's sizes among the maximisers.
pub fn sweep_thm2(cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    run(Claim::Thm2, cfg)
}

/// Segment pairs with the larger side above `C(n-1,k-1)` against the
/// closed form, plus the exhaustive empty-intersection case where feasible.
pub fn sweep_thm1(cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    run(Claim::Thm1, cfg)
}

/// Exhaustive at small layers, sampled (10^5 pairs, fixed seed) otherwise.
/// The exhaustive run also checks the library's compression on every
/// cross-intersecting pair.
pub fn verify_hilton_exhaustive(n: u32, k: u32) -> Result<Vec<Verdict>> {
    let cfg = SweepConfig::point(n, k);
    let cfg = if plan(Claim::Hilton, &cfg).is_ok() { cfg } else { cfg.with_mode(SweepMode::Sampled) };
    run(Claim::Hilton, &cfg)
}

/// Sum bound over segment pairs, graph regularity and neighbourhood containment.
pub fn verify_prop1(n: u32, k: u32) -> Result<Vec<Verdict>> {
    run(Claim::Prop1, &SweepConfig::point(n, k))
}

/// Sum bound under the size hypotheses and per-block saturating matchings.
pub fn verify_lemma7(m: u32, a: u32, j: u32) -> Result<Vec<Verdict>> {
    run(Claim::Lemma7, &SweepConfig::point(m, a).with_i_values(vec![j]))
}

/// Kruskal–Katona over the configured points, then the covering-family
/// bound with `k_range` read as `l`.
pub fn verify_kk_and_mors(cfg: &SweepConfig) -> Result<Vec<Verdict>> {
    let mut out = run(Claim::Kk, cfg)?;
    let mors_cfg = SweepConfig { mode: None, ..cfg.clone() };
    out.extend(run(Claim::Mors, &mors_cfg)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(v: &[Verdict], claim: &str) -> Verdict {
        v.iter().find(|x| x.claim == claim).unwrap().clone()
    }

    #[test]
    fn pyber_examples() {
        let v = sweep_pyber(&SweepConfig::point(6, 3)).unwrap();
        assert_eq!((v[0].observed, v[0].expected), (100, 100));
        assert!(v[0].passed);
        assert!(v[0].attained_at.contains(&(10, 10)));

        let v = sweep_pyber(&SweepConfig::point(4, 2)).unwrap();
        assert_eq!(v[0].observed, 9);
        assert_eq!(v[0].attained_at, vec![(3, 3)]);

        let v = sweep_pyber(&SweepConfig::point(2, 1)).unwrap();
        assert_eq!(v[0].observed, 1);
    }

    #[test]
    fn thm2_examples() {
        let v = sweep_thm2(&SweepConfig::point(6, 3).with_i_values(vec![3])).unwrap();
        let m = one(&v, "thm2");
        assert_eq!(m.observed, 91);
        assert!(m.attained_at.contains(&(7, 13)));
        assert!(v.iter().all(|x| x.passed));

        let v = sweep_thm2(&SweepConfig::point(6, 3).with_i_values(vec![4])).unwrap();
        let m = one(&v, "thm2");
        assert_eq!(m.observed, 99);
        assert!(m.attained_at.contains(&(9, 11)));

        let v = sweep_thm2(&SweepConfig::point(8, 4).with_i_values(vec![5])).unwrap();
        assert_eq!(one(&v, "thm2").observed, 1224);
    }

    #[test]
    fn thm1_examples() {
        let v = sweep_thm1(&SweepConfig::point(6, 3)).unwrap();
        let m = one(&v, "thm1");
        assert_eq!((m.observed, m.expected), (99, 99));
        assert!(m.attained_at.contains(&(9, 11)));

        let v = sweep_thm1(&SweepConfig::point(5, 2)).unwrap();
        assert!(v.iter().all(|x| x.passed));
        let b = one(&v, "thm1_empty_intersection");
        assert_eq!(b.expected, 2);
        assert!(b.observed <= 2);

        let v = sweep_thm1(&SweepConfig::point(7, 3)).unwrap();
        let m = one(&v, "thm1");
        assert_eq!(m.expected, 192);
        assert!(m.passed);
    }

    #[test]
    fn hilton_examples() {
        for (n, k) in [(4, 2), (5, 2), (6, 3)] {
            let v = verify_hilton_exhaustive(n, k).unwrap();
            assert!(v.iter().all(|v| v.passed && v.observed == 0), "{v:?}");
        }
        let sampled = verify_hilton_exhaustive(6, 3).unwrap();
        assert_eq!(sampled.len(), 1);
        assert!(sampled[0].seed.is_some());
        let full = verify_hilton_exhaustive(5, 2).unwrap();
        assert_eq!(full.len(), 2);
        assert!(full.iter().all(|v| v.seed.is_none()));
        assert_eq!(one(&full, "hilton_compress").detail, "compressed=6212");
    }

    #[test]
    fn prop1_examples() {
        let v = verify_prop1(6, 3).unwrap();
        let s = one(&v, "prop1");
        assert_eq!(s.expected, 20);
        assert!(s.observed <= 20);
        assert!(v.iter().all(|x| x.passed));
        let v = verify_prop1(5, 2).unwrap();
        assert_eq!(one(&v, "prop1").expected, 8);
        assert!(v.iter().all(|x| x.passed));
    }

    #[test]
    fn lemma7_examples() {
        let v = verify_lemma7(6, 2, 2).unwrap();
        assert_eq!(one(&v, "lemma7").expected, 10);
        assert!(v.iter().all(|x| x.passed));

        let v = verify_lemma7(4, 2, 1).unwrap();
        let s = one(&v, "lemma7");
        assert_eq!((s.expected, s.observed), (6, 6));
        assert_eq!(s.attained_at, vec![(3, 3)]);

        let v = verify_lemma7(8, 3, 2).unwrap();
        assert_eq!(one(&v, "lemma7").expected, 42);
        assert!(v.iter().all(|x| x.passed));
    }

    #[test]
    fn kk_and_mors_examples() {
        let v = verify_kk_and_mors(&SweepConfig::point(5, 3).with_t(2)).unwrap();
        assert!(v.iter().all(|x| x.passed), "{v:?}");
        let m = one(&v, "mors");
        assert_eq!((m.expected, m.observed), (8, 8));
        assert!(m.detail.contains("210"));
        let a = one(&v, "kk_attained");
        assert_eq!(a.observed, 11);

        let cfg = SweepConfig::point(6, 3).with_t(2).with_mode(SweepMode::Sampled).with_samples(2000);
        let v = run(Claim::Kk, &cfg).unwrap();
        assert!(v[0].passed);
        assert_eq!(v[0].seed, Some(cfg.seed));
    }

    #[test]
    fn deterministic_given_seed() {
        let cfg = SweepConfig::point(6, 3).with_mode(SweepMode::Sampled).with_samples(500).with_seed(9);
        assert_eq!(run(Claim::Hilton, &cfg).unwrap(), run(Claim::Hilton, &cfg).unwrap());
        assert_eq!(run(Claim::Kk, &cfg).unwrap(), run(Claim::Kk, &cfg).unwrap());
    }

    #[test]
    fn config_bounds() {
        let big = SweepConfig::point(30, 5);
        assert!(matches!(plan(Claim::Pyber, &big), Err(Error::ConfigBounds(_))));
        assert!(matches!(plan(Claim::Kk, &SweepConfig::point(7, 3)), Err(Error::ConfigBounds(_))));
        assert!(matches!(
            plan(Claim::Hilton, &SweepConfig::point(6, 3)),
            Err(Error::ConfigBounds(_))
        ));
        assert!(plan(Claim::Kk, &SweepConfig::point(6, 3).with_exhaustive_cap(1 << 10)).is_err());
        assert!(plan(Claim::Pyber, &SweepConfig::point(6, 3).with_mode(SweepMode::Sampled)).is_err());
        assert!(plan(Claim::Pyber, &SweepConfig::new(2..=3, 4..=5)).is_err());
    }

    #[test]
    fn plan_expands_ranges() {
        let p = plan(Claim::Thm2, &SweepConfig::new(6..=8, 2..=4)).unwrap();
        // (6,2,3) (6,3,3) (6,3,4) (7,2,3) (7,3,3) (7,3,4) (8,2,3) (8,3,3) (8,3,4) (8,4,3..5)
        assert_eq!(p.len(), 12);
        assert!(p.iter().all(|x| x.i.unwrap() >= 3 && x.i.unwrap() <= x.k + 1));
    }

    #[test]
    fn verdict_json_roundtrip() {
        let v = Verdict::new("pyber", Point { n: 6, k: 3, i: None, t: None }, 100, Relation::Equal, 100)
            .attained([(10, 10), (10, 10)])
            .seeded(3);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), v);
        assert_eq!(v.attained_at, vec![(10, 10)]);
    }
}
