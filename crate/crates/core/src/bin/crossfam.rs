//! Command-line front end: ranks, segments, shadows, compatibility sizes,
//! the extremal construction and the verification sweeps.
//!
//! Exit status: 0 on success (every verdict passed), 1 if any verdict failed,
//! 2 on a usage or parameter error.

use std::collections::BTreeMap;
use std::io::{self, Stdout, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crossfam::cross::{extremal_sizes, max_compatible_b, segments_cross_intersect};
use crossfam::exact::MAX_SAFE;
use crossfam::oracle::{self, Claim, SweepConfig, SweepMode, Verdict};
use crossfam::shadows::kk_min_shadow;
use crossfam::{
    build_extremal_pair, is_cross_intersecting, lovasz_bound, rank, shadow, unrank, KSubset,
    OrderKind, Params, SegmentSpec, SetFamily, ShadowQuery,
};

#[derive(Parser)]
#[command(name = "crossfam", version, about = "Exact combinatorics of cross-intersecting families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Sizes,
    Sets,
}

#[derive(Args)]
struct FormatArg {
    /// Output format: JSON Lines, CSV with a header row, or plain text.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// 0-based rank of a set.
    Rank {
        #[arg(long)]
        n: u32,
        /// Defaults to the size of the set.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value = "lex")]
        order: OrderKind,
        /// Comma-separated 1-based elements, e.g. `2,3`.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Set at a 0-based rank.
    Unrank {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "lex")]
        order: OrderKind,
        #[arg(long)]
        rank: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// The first `m` sets of a layer.
    Segment {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "lex")]
        order: OrderKind,
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Shadow size next to the Kruskal–Katona minimum and the Lovász bound.
    Shadow {
        #[arg(long)]
        n: u32,
        /// Defaults to the size of the first set of `--family`.
        #[arg(long)]
        k: Option<u32>,
        /// Defaults to `k - 1`.
        #[arg(long)]
        t: Option<u32>,
        /// Initial segment as `order:m`, e.g. `colex:5`.
        #[arg(long, conflicts_with_all = ["m", "family"])]
        segment: Option<String>,
        /// Size of a colex initial segment.
        #[arg(long, conflicts_with = "family")]
        m: Option<u64>,
        /// Sets separated by `;`, e.g. `1,2,3;1,2,4`, or `@file` with one set per line.
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Largest `b` with the lex segments of sizes `a` and `b` cross-intersecting.
    Maxb {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Every `a` in `0..=C(n,k)` when omitted.
        #[arg(long)]
        a: Option<u64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// The pair `(A_i, B_i)` and its sizes.
    Extremal {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, value_enum, default_value = "sizes")]
        emit: Emit,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Run a verification sweep and emit one record per verdict.
    Verify {
        #[arg(value_parser = parse_claim)]
        claim: Claim,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Same as `verify inequalities`.
    Inequalities {
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Value or inclusive range `lo..hi` (`m` for lemma7).
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
    /// Value or inclusive range (`a` for lemma7, `l` for mors).
    #[arg(long, value_parser = parse_range)]
    k: RangeInclusive<u32>,
    /// Values of `i` (`j` for lemma7): `3`, `3..5` or `3,4,5`.
    #[arg(long, value_parser = parse_list)]
    i: Option<IndexList>,
    #[arg(long)]
    t: Option<u32>,
    /// exhaustive_families, segment_pairs or sampled; defaults per claim.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<SweepMode>,
    /// Samples per point in sampled mode.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Emit records in parameter order.
    #[arg(long)]
    ordered: bool,
    #[command(flatten)]
    fmt: FormatArg,
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    s.parse().map_err(|e: crossfam::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<SweepMode, String> {
    s.parse().map_err(|e: crossfam::Error| e.to_string())
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("'{s}' is not a non-negative integer"))
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let r = match s.split_once("..") {
        Some((lo, hi)) => parse_u32(lo)?..=parse_u32(hi.trim_start_matches('='))?,
        None => {
            let v = parse_u32(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(format!("empty range '{s}'"));
    }
    Ok(r)
}

#[derive(Clone)]
struct IndexList(Vec<u32>);

fn parse_list(s: &str) -> Result<IndexList, String> {
    if s.contains("..") {
        return Ok(IndexList(parse_range(s)?.collect()));
    }
    s.split(',').map(parse_u32).collect::<Result<_, _>>().map(IndexList)
}

fn parse_elements(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|e| e.trim().parse().map_err(|_| format!("malformed set literal '{s}'")))
        .collect()
}

fn parse_family(n: u32, k: Option<u32>, spec: &str) -> Result<SetFamily, String> {
    let text = match spec.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => spec.replace(';', "\n"),
    };
    let lists = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_elements)
        .collect::<Result<Vec<_>, _>>()?;
    let k = match (k, lists.first()) {
        (Some(k), _) => k,
        (None, Some(first)) => first.len() as u32,
        (None, None) => return Err("an empty family needs --k".into()),
    };
    let params = Params::new(n, k).map_err(err)?;
    SetFamily::from_element_lists(params, &lists).map_err(err)
}

fn err(e: crossfam::Error) -> String {
    e.to_string()
}

fn exact(v: u128) -> Value {
    if v <= MAX_SAFE {
        json!(v as u64)
    } else {
        json!(v.to_string())
    }
}

fn join_pairs(p: &[(u128, u128)]) -> String {
    p.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(";")
}

/// One output record: ordered `(key, value)` fields plus its plain-text form.
struct Record {
    fields: Vec<(&'static str, Value)>,
    human: String,
}

impl Record {
    fn new(human: impl Into<String>) -> Self {
        Record { fields: Vec::new(), human: human.into() }
    }

    fn field(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.fields.push((key, v.into()));
        self
    }

    fn json(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}:{}", json!(k), v))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(csv_cell)
            .collect::<Vec<_>>()
            .join(if items.iter().any(Value::is_array) { ";" } else { "," }),
        other => other.to_string(),
    }
}

struct Emitter {
    format: Format,
    out: Stdout,
    csv: Option<csv::Writer<Stdout>>,
    header_done: bool,
}

impl Emitter {
    fn new(format: Format) -> Self {
        let csv = (format == Format::Csv).then(|| csv::Writer::from_writer(io::stdout()));
        Emitter { format, out: io::stdout(), csv, header_done: false }
    }

    /// `json_line` overrides the generic JSON rendering when given.
    fn emit(&mut self, rec: &Record, json_line: Option<String>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let line = json_line.unwrap_or_else(|| rec.json());
                writeln!(self.out, "{line}")?;
                self.out.flush()
            }
            Format::Human => {
                writeln!(self.out, "{}", rec.human)?;
                self.out.flush()
            }
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer");
                if !self.header_done {
                    w.write_record(rec.fields.iter().map(|(k, _)| *k))?;
                    self.header_done = true;
                }
                w.write_record(rec.fields.iter().map(|(_, v)| csv_cell(v)))?;
                w.flush()
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, String> {
    match cmd {
        Command::Rank { n, k, order, set, fmt } => {
            let elements = parse_elements(&set)?;
            let s = KSubset::new(n, &elements).map_err(err)?;
            if let Some(k) = k {
                if k != s.len() {
                    return Err(err(crossfam::Error::WrongSize { expected: k, actual: s.len() }));
                }
            }
            let r = rank(&s, order);
            let rec = Record::new(r.to_string())
                .field("n", n)
                .field("k", s.len())
                .field("order", order.as_str())
                .field("set", elements)
                .field("rank", exact(r as u128));
            single(fmt.format, rec)
        }
        Command::Unrank { n, k, order, rank: r, fmt } => {
            let params = Params::new(n, k).map_err(err)?;
            let s = unrank(r, order, params).map_err(err)?;
            let rec = Record::new(s.to_string())
                .field("n", n)
                .field("k", k)
                .field("order", order.as_str())
                .field("rank", exact(r as u128))
                .field("set", s.elements());
            single(fmt.format, rec)
        }
        Command::Segment { n, k, order, m, fmt } => {
            let params = Params::new(n, k).map_err(err)?;
            let spec = SegmentSpec::new(order, params, m).map_err(err)?;
            let mut sets: Vec<KSubset> = spec.materialize().iter().copied().collect();
            sets.sort_by_key(|s| rank(s, order));
            let mut em = Emitter::new(fmt.format);
            for (pos, s) in sets.iter().enumerate() {
                let rec = Record::new(s.to_string())
                    .field("n", n)
                    .field("k", k)
                    .field("order", order.as_str())
                    .field("rank", pos as u64)
                    .field("set", s.elements());
                write(&mut em, &rec, None)?;
            }
            Ok(true)
        }
        Command::Shadow { n, k, t, segment, m, family, fmt } => {
            let fam = match (segment, m, family) {
                (Some(seg), _, _) => {
                    let (order, size) = seg
                        .split_once(':')
                        .ok_or_else(|| format!("segment '{seg}' is not of the form order:m"))?;
                    let order: OrderKind = order.parse().map_err(err)?;
                    let size: u64 = size.parse().map_err(|_| format!("bad segment size '{size}'"))?;
                    let k = k.ok_or("--segment needs --k")?;
                    let params = Params::new(n, k).map_err(err)?;
                    SegmentSpec::new(order, params, size).map_err(err)?.materialize()
                }
                (None, Some(size), None) => {
                    let k = k.ok_or("--m needs --k")?;
                    let params = Params::new(n, k).map_err(err)?;
                    SegmentSpec::new(OrderKind::Colex, params, size).map_err(err)?.materialize()
                }
                (None, None, Some(spec)) => parse_family(n, k, &spec)?,
                _ => return Err("give one of --segment, --m or --family".into()),
            };
            let params = fam.params();
            let t = match t {
                Some(t) => t,
                None => params.k().checked_sub(1).ok_or("k = 0 has no lower shadow; pass --t 0")?,
            };
            let size = fam.len() as u64;
            let sh = shadow(&fam, t).map_err(err)?.len() as u64;
            let kk = kk_min_shadow(&ShadowQuery::new(params, t, size).map_err(err)?);
            let lov = lovasz_bound(size, params.k(), t).map_err(err)?;
            let rec = Record::new(format!("shadow={sh} kk_min={kk} lovasz={lov:.6}"))
                .field("n", n)
                .field("k", params.k())
                .field("t", t)
                .field("m", size)
                .field("shadow", sh)
                .field("kk_min", kk)
                .field("lovasz", lov);
            single(fmt.format, rec)
        }
        Command::Maxb { n, k, a, fmt } => {
            let total = Params::new(n, k).map_err(err)?.layer_size();
            let sizes: Vec<u64> = match a {
                Some(a) => vec![a],
                None => (0..=total).collect(),
            };
            let mut em = Emitter::new(fmt.format);
            for a in sizes {
                let b = max_compatible_b(n, k, a).map_err(err)?;
                let product = a as u128 * b as u128;
                let rec = Record::new(format!("a={a} max_b={b} product={product}"))
                    .field("n", n)
                    .field("k", k)
                    .field("a", exact(a as u128))
                    .field("max_b", exact(b as u128))
                    .field("product", exact(product));
                write(&mut em, &rec, None)?;
            }
            Ok(true)
        }
        Command::Extremal { n, k, i, emit, fmt } => {
            if i < 2 || i > k + 1 {
                return Err(format!("need 2 <= i <= k + 1, got i = {i}, k = {k}"));
            }
            let (a_size, b_size) = extremal_sizes(n, k, i).map_err(err)?;
            // Sizes alone go through the shadow criterion; sets are only built on request.
            let pair = match emit {
                Emit::Sets => Some(build_extremal_pair(n, k, i).map_err(err)?),
                Emit::Sizes => None,
            };
            let (cross, consistent) = match &pair {
                Some(p) => (
                    is_cross_intersecting(&p.a_family, &p.b_family).map_err(err)?,
                    (a_size, b_size) == (p.a_size, p.b_size),
                ),
                None => {
                    let a = u64::try_from(a_size).map_err(|_| "size exceeds 64 bits".to_string())?;
                    let b = u64::try_from(b_size).map_err(|_| "size exceeds 64 bits".to_string())?;
                    let cross = segments_cross_intersect(n, k, a, b).map_err(err)?;
                    (cross, max_compatible_b(n, k, a).map_err(err)? == b)
                }
            };
            let boundary = n == 2 * k;
            let product = a_size * b_size;
            let mut human = format!(
                "sizes {a_size}, {b_size}; product {product}; cross-intersecting: {cross}{}",
                if boundary { " (boundary n = 2k)" } else { "" }
            );
            let mut rec = Record::new(String::new())
                .field("n", n)
                .field("k", k)
                .field("i", i)
                .field("a_size", exact(a_size))
                .field("b_size", exact(b_size))
                .field("product", exact(product))
                .field("cross_intersecting", cross)
                .field("closed_form_matches", consistent)
                .field("boundary", boundary);
            if let Some(p) = &pair {
                for (label, f) in [("A", &p.a_family), ("B", &p.b_family)] {
                    human.push_str(&format!("\n{label}:"));
                    for s in f.iter() {
                        human.push_str(&format!("\n  {s}"));
                    }
                }
                rec = rec
                    .field("a_family", json!(p.a_family.to_element_lists()))
                    .field("b_family", json!(p.b_family.to_element_lists()));
            }
            rec.human = human;
            let ok = cross && consistent;
            single(fmt.format, rec)?;
            Ok(ok)
        }
        Command::Verify { claim, sweep } => verify(claim, sweep),
        Command::Inequalities { sweep } => verify(Claim::Inequalities, sweep),
    }
}

fn write(em: &mut Emitter, rec: &Record, json_line: Option<String>) -> Result<(), String> {
    match em.emit(rec, json_line) {
        // the reader went away, e.g. `| head`
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => r.map_err(|e| e.to_string()),
    }
}

fn single(format: Format, rec: Record) -> Result<bool, String> {
    let mut em = Emitter::new(format);
    write(&mut em, &rec, None)?;
    Ok(true)
}

fn verdict_record(v: &Verdict) -> Record {
    let opt = |x: Option<u32>| x.map_or(Value::Null, Value::from);
    let mut human = format!("{} n={} k={}", v.claim, v.n, v.k);
    if let Some(i) = v.i {
        human.push_str(&format!(" i={i}"));
    }
    if let Some(t) = v.t {
        human.push_str(&format!(" t={t}"));
    }
    human.push_str(&format!(
        ": observed {} {} expected {}",
        v.observed,
        v.relation.symbol(),
        v.expected
    ));
    if !v.attained_at.is_empty() {
        human.push_str(&format!(", attained {}", join_pairs(&v.attained_at)));
    }
    if !v.detail.is_empty() {
        human.push_str(&format!(" [{}]", v.detail));
    }
    human.push_str(if v.passed { " PASS" } else { " FAIL" });
    Record::new(human)
        .field("claim", v.claim.clone())
        .field("n", v.n)
        .field("k", v.k)
        .field("i", opt(v.i))
        .field("t", opt(v.t))
        .field("expected", v.expected.to_string())
        .field("observed", v.observed.to_string())
        .field("relation", v.relation.symbol())
        .field("attained_at", join_pairs(&v.attained_at))
        .field("passed", v.passed)
        .field("seed", v.seed.map_or(Value::Null, Value::from))
        .field("detail", v.detail.clone())
}

fn verify(claim: Claim, a: SweepArgs) -> Result<bool, String> {
    let mut cfg = SweepConfig::new(a.n, a.k).with_samples(a.samples).with_seed(a.seed);
    cfg.i_values = a.i.map(|l| l.0);
    cfg.t = a.t;
    cfg.mode = a.mode;
    let points = oracle::plan(claim, &cfg).map_err(err)?;
    let jobs = a
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, points.len());

    let mut em = Emitter::new(a.fmt.format);
    let (mut total, mut failed) = (0usize, 0usize);
    let mut first_error: Option<String> = None;
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();

    std::thread::scope(|scope| -> Result<(), String> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let (points, cfg, next) = (&points, &cfg, &next);
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(&p) = points.get(idx) else { break };
                if tx.send((idx, oracle::evaluate(claim, p, cfg))).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut handle = |result: crossfam::Result<Vec<Verdict>>| -> Result<(), String> {
            match result {
                Ok(verdicts) => {
                    for v in verdicts {
                        total += 1;
                        failed += usize::from(!v.passed);
                        let line = serde_json::to_string(&v).map_err(|e| e.to_string())?;
                        write(&mut em, &verdict_record(&v), Some(line))?;
                    }
                }
                Err(e) => {
                    first_error.get_or_insert_with(|| e.to_string());
                }
            }
            Ok(())
        };
        let mut pending = BTreeMap::new();
        let mut cursor = 0;
        for (idx, result) in rx {
            if !a.ordered {
                handle(result)?;
                continue;
            }
            pending.insert(idx, result);
            while let Some(r) = pending.remove(&cursor) {
                cursor += 1;
                handle(r)?;
            }
        }
        Ok(())
    })?;

    eprintln!(
        "summary: claim={claim} points={} records={total} passed={} failed={failed}",
        points.len(),
        total - failed
    );
    if let Some(e) = first_error {
        return Err(e);
    }
    Ok(failed == 0)
}
