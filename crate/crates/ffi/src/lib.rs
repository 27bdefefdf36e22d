//! C ABI over the `crossfam` library.
//!
//! Every function returns a [`CfStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`cf_last_error_message`]. Families are opaque [`CfFamily`] handles owned
//! by the caller and released with [`cf_family_free`]; strings returned by
//! the library are released with [`cf_string_free`]. Set elements are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crossfam::cross::{self, max_compatible_b};
use crossfam::oracle::{self, Claim, SweepConfig, SweepMode};
use crossfam::shadows::kk_min_shadow;
use crossfam::{Error, KSubset, OrderKind, Params, SegmentSpec, SetFamily, ShadowQuery};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    InvalidArgument = 1,
    OutOfRange = 2,
    Overflow = 3,
    NotCrossIntersecting = 4,
    NoMatching = 5,
    ConfigBounds = 6,
    Solver = 7,
    NullPointer = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfOrder {
    Lex = 0,
    Colex = 1,
    RevColex = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfMode {
    /// The claim's own default.
    Default = 0,
    ExhaustiveFamilies = 1,
    SegmentPairs = 2,
    Sampled = 3,
}

/// Sweep parameters for [`cf_verify`]. Start from [`cf_sweep_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CfSweepConfig {
    pub n_lo: u32,
    pub n_hi: u32,
    pub k_lo: u32,
    pub k_hi: u32,
    /// Range of `i` (`j` for lemma7); `i_lo = 0` means the claim's default.
    pub i_lo: u32,
    pub i_hi: u32,
    /// Negative means the claim's default.
    pub t: i32,
    pub mode: CfMode,
    pub samples: u64,
    pub seed: u64,
}

/// A family of `k`-subsets of `[n]`.
pub struct CfFamily(SetFamily);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fail(CfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Overflow(_) => CfStatus::Overflow,
            Error::RankOutOfRange { .. } | Error::SegmentOutOfRange { .. } => CfStatus::OutOfRange,
            Error::NotCrossIntersecting => CfStatus::NotCrossIntersecting,
            Error::NoSaturatingMatching { .. } => CfStatus::NoMatching,
            Error::ConfigBounds(_) => CfStatus::ConfigBounds,
            Error::Solver(_) => CfStatus::Solver,
            _ => CfStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CfStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(CfStatus::NullPointer, "null pointer argument".into())
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn elements<'a>(ptr: *const u32, len: usize) -> Result<&'a [u32], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn family<'a>(f: *const CfFamily) -> Result<&'a SetFamily, Fail> {
    f.as_ref().map(|f| &f.0).ok_or_else(null)
}

fn narrow(v: u128, what: &str) -> Result<u64, Fail> {
    u64::try_from(v).map_err(|_| Fail(CfStatus::Overflow, format!("{what} does not fit in 64 bits")))
}

fn order(o: CfOrder) -> OrderKind {
    match o {
        CfOrder::Lex => OrderKind::Lex,
        CfOrder::Colex => OrderKind::Colex,
        CfOrder::RevColex => OrderKind::RevColex,
    }
}

unsafe fn write_elements(s: &KSubset, out: *mut u32, cap: usize, out_len: *mut usize) -> Result<(), Fail> {
    let e = s.elements();
    put(out_len, e.len())?;
    if e.len() > cap {
        return Err(Fail(CfStatus::BufferTooSmall, format!("need room for {} elements", e.len())));
    }
    if !e.is_empty() {
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(e.as_ptr(), out, e.len());
    }
    Ok(())
}

/// Message for the last failing call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `C(m, b)`; 0 outside `0 <= b <= m`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_binom(m: i64, b: i64, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(crossfam::binom(m, b)?, "binomial")?))
}

/// Empty family of `k`-subsets of `[n]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_family_new(n: u32, k: u32, out: *mut *mut CfFamily) -> CfStatus {
    guard(|| {
        let f = SetFamily::empty(Params::new(n, k)?);
        put(out, Box::into_raw(Box::new(CfFamily(f))))
    })
}

/// Initial segment of size `m` under `ord`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_family_segment(
    ord: CfOrder,
    n: u32,
    k: u32,
    m: u64,
    out: *mut *mut CfFamily,
) -> CfStatus {
    guard(|| {
        let spec = SegmentSpec::new(order(ord), Params::new(n, k)?, m)?;
        put(out, Box::into_raw(Box::new(CfFamily(spec.materialize()))))
    })
}

/// # Safety
/// `f` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cf_family_free(f: *mut CfFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Adds a set; `*out_added` tells whether it was new.
///
/// # Safety
/// `f` must be a live handle; `elements` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn cf_family_insert(
    f: *mut CfFamily,
    elements_ptr: *const u32,
    len: usize,
    out_added: *mut bool,
) -> CfStatus {
    guard(|| {
        let fam = &mut f.as_mut().ok_or_else(null)?.0;
        let s = KSubset::new(fam.params().n(), elements(elements_ptr, len)?)?;
        let added = fam.insert(s)?;
        if !out_added.is_null() {
            out_added.write(added);
        }
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_family_len(f: *const CfFamily, out: *mut usize) -> CfStatus {
    guard(|| put(out, family(f)?.len()))
}

/// Copies the `index`-th member (in the family's iteration order) into `out`,
/// which has room for `cap` elements; `*out_len` receives the set size.
///
/// # Safety
/// `f` must be a live handle; `out` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn cf_family_get(
    f: *const CfFamily,
    index: usize,
    out: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> CfStatus {
    guard(|| {
        let fam = family(f)?;
        let s = fam.iter().nth(index).ok_or_else(|| {
            Fail(CfStatus::OutOfRange, format!("index {index} out of range for {} sets", fam.len()))
        })?;
        write_elements(s, out, cap, out_len)
    })
}

/// New handle holding the `t`-shadow of `f`.
///
/// # Safety
/// `f` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_family_shadow(f: *const CfFamily, t: u32, out: *mut *mut CfFamily) -> CfStatus {
    guard(|| {
        let sh = crossfam::shadow(family(f)?, t)?;
        put(out, Box::into_raw(Box::new(CfFamily(sh))))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_is_cross_intersecting(
    a: *const CfFamily,
    b: *const CfFamily,
    out: *mut bool,
) -> CfStatus {
    guard(|| put(out, crossfam::is_cross_intersecting(family(a)?, family(b)?)?))
}

/// 0-based rank of a set of `[n]` under `ord`.
///
/// # Safety
/// `elements` must point to `len` values; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_rank(
    n: u32,
    elements_ptr: *const u32,
    len: usize,
    ord: CfOrder,
    out: *mut u64,
) -> CfStatus {
    guard(|| {
        let s = KSubset::new(n, elements(elements_ptr, len)?)?;
        put(out, crossfam::rank(&s, order(ord)))
    })
}

/// Set at a 0-based rank, written to `out` (room for `cap` elements).
///
/// # Safety
/// `out` must have room for `cap` values; `out_len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_unrank(
    n: u32,
    k: u32,
    ord: CfOrder,
    rank: u64,
    out: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> CfStatus {
    guard(|| {
        let s = crossfam::unrank(rank, order(ord), Params::new(n, k)?)?;
        write_elements(&s, out, cap, out_len)
    })
}

/// Least `t`-shadow of `m` sets of size `k` from `[n]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_kk_min_shadow(n: u32, k: u32, t: u32, m: u64, out: *mut u64) -> CfStatus {
    guard(|| put(out, kk_min_shadow(&ShadowQuery::new(Params::new(n, k)?, t, m)?)))
}

/// `C(x, t)` with `C(x, k) = m`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_lovasz_bound(m: u64, k: u32, t: u32, out: *mut f64) -> CfStatus {
    guard(|| put(out, crossfam::lovasz_bound(m, k, t)?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_max_compatible_b(n: u32, k: u32, a: u64, out: *mut u64) -> CfStatus {
    guard(|| put(out, max_compatible_b(n, k, a)?))
}

/// `C(n-1,k-1)^2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_pyber_bound(n: u32, k: u32, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(cross::pyber_bound(n, k)?, "bound")?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_thm1_bound(n: u32, k: u32, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(cross::thm1_bound(n, k)?, "bound")?))
}

/// Size threshold on `|B|` and the product bound for `3 <= i <= k + 1`.
///
/// # Safety
/// Both out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_thm2_bound(
    n: u32,
    k: u32,
    i: u32,
    out_threshold: *mut u64,
    out_product: *mut u64,
) -> CfStatus {
    guard(|| {
        let b = cross::thm2_bound(n, k, i)?;
        put(out_threshold, narrow(b.b_threshold, "threshold")?)?;
        put(out_product, narrow(b.product_bound, "bound")?)
    })
}

/// `2 C(n-1, k-1)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_prop1_sum_bound(n: u32, k: u32, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(cross::prop1_sum_bound(n, k)?, "bound")?))
}

/// `C(m,a) + C(m-j,a-j) - C(m-j,a)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_lemma7_bound(m: u32, a: u32, j: u32, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(cross::lemma7_bound(m, a, j)?, "bound")?))
}

/// `C(n-1, t) + C(l-1, t-1)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_mors_bound(n: u32, l: u32, t: u32, out: *mut u64) -> CfStatus {
    guard(|| put(out, narrow(crossfam::mors_bound(n, l, t)?, "bound")?))
}

/// Config for a single point `(n, k)` with every other field defaulted.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_sweep_config_default(n: u32, k: u32, out: *mut CfSweepConfig) -> CfStatus {
    let d = SweepConfig::point(n, k);
    guard(|| {
        put(
            out,
            CfSweepConfig {
                n_lo: n,
                n_hi: n,
                k_lo: k,
                k_hi: k,
                i_lo: 0,
                i_hi: 0,
                t: -1,
                mode: CfMode::Default,
                samples: d.sample_count,
                seed: d.seed,
            },
        )
    })
}

/// Runs the sweep for `claim` (`"pyber"`, `"thm2"`, ...). `*out_json` receives
/// a JSON array of verdicts (free with [`cf_string_free`]); `*out_passed`
/// whether every verdict passed.
///
/// # Safety
/// `claim` must be a NUL-terminated string; `cfg` must point to a config; the
/// out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cf_verify(
    claim: *const c_char,
    cfg: *const CfSweepConfig,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> CfStatus {
    guard(|| {
        if claim.is_null() || out_json.is_null() {
            return Err(null());
        }
        let c = cfg.as_ref().ok_or_else(null)?;
        let name = CStr::from_ptr(claim)
            .to_str()
            .map_err(|_| Fail(CfStatus::InvalidArgument, "claim is not UTF-8".into()))?;
        let claim: Claim = name.parse()?;
        let mut sc = SweepConfig::new(c.n_lo..=c.n_hi, c.k_lo..=c.k_hi)
            .with_samples(c.samples)
            .with_seed(c.seed);
        if c.i_lo > 0 {
            sc.i_values = Some((c.i_lo..=c.i_hi.max(c.i_lo)).collect());
        }
        if c.t >= 0 {
            sc.t = Some(c.t as u32);
        }
        sc.mode = match c.mode {
            CfMode::Default => None,
            CfMode::ExhaustiveFamilies => Some(SweepMode::ExhaustiveFamilies),
            CfMode::SegmentPairs => Some(SweepMode::SegmentPairs),
            CfMode::Sampled => Some(SweepMode::Sampled),
        };
        let verdicts = oracle::run(claim, &sc)?;
        let passed = verdicts.iter().all(|v| v.passed);
        let text = serde_json::to_string(&verdicts).map_err(|e| Fail(CfStatus::Internal, e.to_string()))?;
        let s = CString::new(text).map_err(|e| Fail(CfStatus::Internal, e.to_string()))?;
        if !out_passed.is_null() {
            out_passed.write(passed);
        }
        out_json.write(s.into_raw());
        Ok(())
    })
}
